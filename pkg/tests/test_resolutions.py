"""Koszul and Taylor resolutions, minimization, resolution_of dispatch."""
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from starcone import (
    MonomialIdeal,
    RingSpec,
    certifies_resolution_of,
    graded_betti,
    hilbert_function,
    homology_dims,
    is_complex,
    is_minimal,
    is_regular_sequence_monomials,
    koszul,
    minimize,
    poly_parse,
    resolution_of,
    taylor,
    trivial_resolution,
)

RING = RingSpec(("x", "y"))
RING3 = RingSpec(("x", "y", "z"))


def K(ring, *texts):
    return koszul(ring, [poly_parse(t, ring) for t in texts])


def test_koszul_length_one():
    ring = RingSpec(("x",))
    C = K(ring, "x")
    assert [C.rank(0), C.rank(1)] == [1, 1]
    assert C.twists(1) == (1,)
    assert str(C.diff(1).entry(0, 0)) == "x"

    C2 = K(ring, "x^2")
    assert C2.twists(1) == (2,)
    assert str(C2.diff(1).entry(0, 0)) == "x^2"
    assert certifies_resolution_of(C2, MonomialIdeal.parse(["x^2"], ring), 5)


def test_koszul_binomial_ranks_and_squares_to_zero():
    C = K(RING3, "x", "y", "z")
    assert [C.rank(n) for n in range(4)] == [comb(3, n) for n in range(4)]
    assert is_complex(C)
    assert is_minimal(C)
    assert C.twists(3) == (3,)


def test_koszul_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        K(RING, "x + 1")
    with pytest.raises(ValueError):
        K(RING, "0")


def test_taylor_frozen_quadratic():
    I = MonomialIdeal.parse(["x^2", "x*y", "y^2"], RING)
    T = taylor(I)
    assert [T.rank(n) for n in range(4)] == [1, 3, 3, 1]
    assert is_complex(T)
    M = minimize(T)
    assert [M.rank(n) for n in range(3)] == [1, 3, 2]
    assert is_minimal(M)
    assert graded_betti(M).entries == {(0, 0): 1, (1, 2): 3, (2, 3): 2}


def test_minimize_preserves_homology():
    I = MonomialIdeal.parse(["x^2", "x*y", "y^3"], RING)
    T = taylor(I)
    M = minimize(T)
    bound = 7
    before = homology_dims(T, bound)
    after = homology_dims(M, bound)
    assert before.dims == after.dims
    assert before.h0 == after.h0 == hilbert_function(I, bound)
    assert is_minimal(M)


def test_minimize_fixes_minimal_complex():
    C = K(RING, "x", "y")
    assert minimize(C) == C


def test_trivial_resolution():
    C = trivial_resolution(RING)
    assert C.support() == [0]
    assert C.rank(0) == 1


def test_resolution_of_dispatch():
    reg = MonomialIdeal.parse(["x^2", "y^3"], RING)
    assert resolution_of(reg) == K(RING, "x^2", "y^3")
    assert resolution_of(MonomialIdeal(RING, [])) == trivial_resolution(RING)
    messy = MonomialIdeal.parse(["x^2", "x*y"], RING)
    R = resolution_of(messy)
    assert is_minimal(R)
    assert certifies_resolution_of(R, messy, 6)


def test_regular_sequence_detector():
    m = lambda ts: MonomialIdeal.parse(ts, RING3).gens
    assert is_regular_sequence_monomials(m(["x", "y", "z"]))
    assert is_regular_sequence_monomials(m(["x^2", "y*z"]))
    assert not is_regular_sequence_monomials(m(["x*y", "y*z"]))
    assert not is_regular_sequence_monomials([(0, 0, 0)])


mono_texts = st.lists(
    st.sampled_from(["x^2", "x*y", "y^2", "x^3", "y^3", "x*y^2", "x^2*y"]),
    min_size=1,
    max_size=3,
    unique=True,
)


@given(mono_texts)
def test_resolution_of_certifies_property(texts):
    I = MonomialIdeal.parse(texts, RING)
    R = resolution_of(I)
    assert is_minimal(R)
    bound = I.max_gen_degree() + R.max_degree() + 1
    assert certifies_resolution_of(R, I, bound)
