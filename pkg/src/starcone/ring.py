"""Multigraded polynomial ring arithmetic over an exact field.

Monomials are bare exponent tuples, polynomials are dicts mapping exponent
tuples to nonzero field elements.  Everything here is for the standard
grading (total degree); ideals are monomial ideals held by their unique
minimal generating set.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

from .fields import PrimeField, field_from_description

Monomial = tuple  # exponent tuple, one entry per ring variable

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PolyParseError(ValueError):
    """Raised for malformed polynomial text or out-of-ring symbols."""


@dataclass(frozen=True)
class RingSpec:
    """A polynomial ring: ordered variables, optional two-block partition,
    and a coefficient field (prime field with p = 32003 unless asked)."""

    variables: tuple
    partition: Optional[tuple] = None  # (block_a_names, block_b_names)
    coeff_field: object = field(default_factory=PrimeField)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("ring needs at least one variable")
        for v in self.variables:
            if not _NAME_RE.match(v):
                raise ValueError(f"bad variable name {v!r}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        if self.partition is not None:
            a, b = self.partition
            object.__setattr__(self, "partition", (tuple(a), tuple(b)))
            a, b = self.partition
            if set(a) & set(b):
                raise ValueError("partition blocks overlap")
            if set(a) | set(b) != set(self.variables):
                raise ValueError("partition must cover all variables")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise PolyParseError(f"unknown variable {name!r}") from None

    def block_indices(self, which: str) -> tuple:
        if self.partition is None:
            raise ValueError("ring has no block partition")
        names = self.partition[0] if which == "a" else self.partition[1]
        return tuple(self.variables.index(v) for v in names)

    def describe(self) -> dict:
        out = {"variables": list(self.variables), "field": self.coeff_field.describe()}
        if self.partition is not None:
            out["partition"] = {"a": list(self.partition[0]), "b": list(self.partition[1])}
        return out

    @staticmethod
    def from_description(desc: dict) -> "RingSpec":
        part = None
        if "partition" in desc:
            part = (tuple(desc["partition"]["a"]), tuple(desc["partition"]["b"]))
        return RingSpec(
            tuple(desc["variables"]),
            partition=part,
            coeff_field=field_from_description(desc["field"]),
        )


# ---------------------------------------------------------------- monomials

def mono_one(nvars: int) -> Monomial:
    return (0,) * nvars


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b | a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_support(m: Monomial) -> frozenset:
    return frozenset(i for i, e in enumerate(m) if e)


def mono_key(m: Monomial):
    """Graded-lex sort key, largest first when used with sorted(..., key=mono_key)."""
    return (-mono_degree(m), tuple(-e for e in m))


def mono_str(m: Monomial, ring: RingSpec) -> str:
    parts = []
    for name, e in zip(ring.variables, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, d: int) -> tuple:
    """All exponent tuples of total degree d, descending lex.  Cached."""
    if d < 0:
        return ()
    if nvars == 0:
        return ((),) if d == 0 else ()
    if nvars == 1:
        return ((d,),)
    out = []
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - e):
            out.append((e,) + rest)
    return tuple(out)


# -------------------------------------------------------------- polynomials

class Polynomial:
    """Sparse polynomial: dict of exponent tuple -> nonzero field element."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms: dict):
        self.ring = ring
        self.terms = terms  # treated as immutable after construction

    # constructors -----------------------------------------------------
    @staticmethod
    def zero(ring: RingSpec) -> "Polynomial":
        return Polynomial(ring, {})

    @staticmethod
    def constant(ring: RingSpec, c) -> "Polynomial":
        c = ring.coeff_field.of_int(c) if isinstance(c, int) else c
        if c == ring.coeff_field.zero:
            return Polynomial(ring, {})
        return Polynomial(ring, {mono_one(ring.nvars): c})

    @staticmethod
    def one(ring: RingSpec) -> "Polynomial":
        return Polynomial.constant(ring, 1)

    @staticmethod
    def monomial(ring: RingSpec, m: Monomial, coeff=1) -> "Polynomial":
        F = ring.coeff_field
        c = F.of_int(coeff) if isinstance(coeff, int) else coeff
        if c == F.zero:
            return Polynomial(ring, {})
        if len(m) != ring.nvars or any(e < 0 for e in m):
            raise ValueError(f"bad exponent tuple {m!r}")
        return Polynomial(ring, {tuple(m): c})

    @staticmethod
    def variable(ring: RingSpec, name: str) -> "Polynomial":
        i = ring.var_index(name)
        m = tuple(1 if j == i else 0 for j in range(ring.nvars))
        return Polynomial(ring, {m: ring.coeff_field.one})

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {mono_degree(m) for m in self.terms}
        return len(degs) <= 1

    def constant_coeff(self):
        return self.terms.get(mono_one(self.ring.nvars), self.ring.coeff_field.zero)

    def is_constant(self) -> bool:
        return all(mono_degree(m) == 0 for m in self.terms)

    def monomials(self):
        return self.terms.keys()

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]))

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "Polynomial") -> "Polynomial":
        F = self.ring.coeff_field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = F.add(out.get(m, F.zero), c)
            if s == F.zero:
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    def __neg__(self) -> "Polynomial":
        F = self.ring.coeff_field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        F = self.ring.coeff_field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = F.add(out.get(m, F.zero), F.mul(c1, c2))
                if s == F.zero:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.ring, out)

    def scale(self, c) -> "Polynomial":
        F = self.ring.coeff_field
        c = F.of_int(c) if isinstance(c, int) else c
        if c == F.zero:
            return Polynomial.zero(self.ring)
        return Polynomial(self.ring, {m: F.mul(v, c) for m, v in self.terms.items()})

    def times_monomial(self, m: Monomial) -> "Polynomial":
        return Polynomial(self.ring, {mono_mul(k, m): c for k, c in self.terms.items()})

    def drop_multiples_of(self, ideal: "MonomialIdeal") -> "Polynomial":
        """Image in R/ideal under the standard-monomial splitting."""
        return Polynomial(
            self.ring,
            {m: c for m, c in self.terms.items() if not ideal.contains_monomial(m)},
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        F = self.ring.coeff_field
        pieces = []
        for m, c in self.sorted_terms():
            neg = not isinstance(F, PrimeField) and c < 0
            mag = -c if neg else c
            if mono_degree(m) == 0:
                body = str(mag)
            elif mag == F.one:
                body = mono_str(m, self.ring)
            else:
                body = f"{mag}*{mono_str(m, self.ring)}"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append(("- " if neg else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


# ------------------------------------------------------------------ parser

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise PolyParseError(f"unexpected character {text[pos:].strip()[0]!r}")
            break
        pos = m.end()
        if m.lastgroup == "int":
            out.append(("int", int(m.group("int"))))
        elif m.lastgroup == "name":
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
    return out


def poly_parse(text: str, ring: RingSpec) -> Polynomial:
    """Parse `term (+|- term)*` where a term is a '*'-joined product of an
    optional integer (or integer/integer) coefficient and var^nat factors."""
    toks = _tokenize(text)
    if not toks:
        raise PolyParseError("empty polynomial text")
    F = ring.coeff_field
    result = Polynomial.zero(ring)
    i = 0

    def parse_factor(i, coeff, expts):
        kind, val = toks[i]
        if kind == "int":
            num, i = val, i + 1
            if i < len(toks) and toks[i] == ("op", "/"):
                i += 1
                if i >= len(toks) or toks[i][0] != "int":
                    raise PolyParseError("malformed rational coefficient")
                try:
                    coeff = F.mul(coeff, F.of_fraction(num, toks[i][1]))
                except ZeroDivisionError as e:
                    raise PolyParseError(str(e)) from None
                i += 1
            else:
                coeff = F.mul(coeff, F.of_int(num))
            return i, coeff, expts
        if kind == "name":
            idx = ring.var_index(val)
            i += 1
            e = 1
            if i < len(toks) and toks[i] == ("op", "^"):
                i += 1
                if i >= len(toks) or toks[i][0] != "int":
                    raise PolyParseError(f"malformed exponent after {val!r}")
                e = toks[i][1]
                i += 1
            expts[idx] += e
            return i, coeff, expts
        raise PolyParseError(f"unexpected token {val!r}")

    sign = 1
    if toks[0] == ("op", "-"):
        sign, i = -1, 1
    elif toks[0] == ("op", "+"):
        i = 1
    while i < len(toks):
        coeff, expts = F.of_int(sign), [0] * ring.nvars
        i, coeff, expts = parse_factor(i, coeff, expts)
        while i < len(toks) and toks[i] == ("op", "*"):
            i += 1
            if i >= len(toks):
                raise PolyParseError("dangling '*'")
            i, coeff, expts = parse_factor(i, coeff, expts)
        result = result + Polynomial.monomial(ring, tuple(expts), coeff)
        if i >= len(toks):
            break
        kind, val = toks[i]
        if kind != "op" or val not in "+-":
            raise PolyParseError(f"expected '+' or '-', got {val!r}")
        sign = 1 if val == "+" else -1
        i += 1
        if i >= len(toks):
            raise PolyParseError(f"dangling {val!r}")
    return result


def mono_parse(text: str, ring: RingSpec) -> Monomial:
    p = poly_parse(text, ring)
    if len(p.terms) != 1:
        raise PolyParseError(f"{text!r} is not a single monomial")
    ((m, c),) = p.terms.items()
    if c != ring.coeff_field.one:
        raise PolyParseError(f"{text!r} has a nontrivial coefficient")
    return m


# ----------------------------------------------------------------- ideals

def _minimalize(monos: Iterable[Monomial]) -> tuple:
    """Drop any monomial that another one divides; sort by degree then lex."""
    uniq = set(monos)
    kept = [
        m
        for m in uniq
        if not any(other != m and mono_divides(other, m) for other in uniq)
    ]
    return tuple(sorted(kept, key=lambda m: (mono_degree(m), tuple(-e for e in m))))


class MonomialIdeal:
    """Monomial ideal, stored by its minimal generating set (canonical)."""

    __slots__ = ("ring", "gens")

    def __init__(self, ring: RingSpec, gens: Iterable[Monomial]):
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != ring.nvars or any(e < 0 for e in g):
                raise ValueError(f"bad generator {g!r}")
            if mono_degree(g) == 0:
                raise ValueError("unit ideal is not supported here")
        self.ring = ring
        self.gens = _minimalize(gens)

    @staticmethod
    def parse(texts: Sequence[str], ring: RingSpec) -> "MonomialIdeal":
        return MonomialIdeal(ring, [mono_parse(t, ring) for t in texts])

    def is_zero(self) -> bool:
        return not self.gens

    def contains_monomial(self, m: Monomial) -> bool:
        return any(mono_divides(g, m) for g in self.gens)

    def support(self) -> frozenset:
        out = frozenset()
        for g in self.gens:
            out |= mono_support(g)
        return out

    def max_gen_degree(self) -> int:
        return max((mono_degree(g) for g in self.gens), default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonomialIdeal)
            and self.ring == other.ring
            and self.gens == other.gens
        )

    def __hash__(self):
        return hash((self.ring, self.gens))

    def __str__(self) -> str:
        if not self.gens:
            return "<0>"
        return "<" + ", ".join(mono_str(g, self.ring) for g in self.gens) + ">"

    __repr__ = __str__


def ideal_membership(p: Polynomial, ideal: MonomialIdeal) -> bool:
    """A polynomial lies in a monomial ideal iff each of its monomials does."""
    return all(ideal.contains_monomial(m) for m in p.terms)


def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return MonomialIdeal(I.ring, [mono_mul(a, b) for a in I.gens for b in J.gens])


def ideal_intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return MonomialIdeal(I.ring, [mono_lcm(a, b) for a in I.gens for b in J.gens])


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return MonomialIdeal(I.ring, list(I.gens) + list(J.gens))


def ideal_contains(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """J subseteq I, decided on generators."""
    _same_ring(I, J)
    return all(I.contains_monomial(g) for g in J.gens)


def _same_ring(I: MonomialIdeal, J: MonomialIdeal):
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")


def hilbert_function(I: MonomialIdeal, d_max: int) -> list:
    """dim_k (R/I)_d for d = 0..d_max, by counting standard monomials."""
    if d_max < 0:
        raise ValueError("d_max must be >= 0")
    n = I.ring.nvars
    return [
        sum(1 for m in monomials_of_degree(n, d) if not I.contains_monomial(m))
        for d in range(d_max + 1)
    ]


def ideal_monomial_count(I: MonomialIdeal, d: int) -> int:
    """Number of degree-d monomials inside I, by inclusion-exclusion over
    generator subsets (independent of the enumeration in hilbert_function)."""
    n = I.ring.nvars
    total = 0
    gens = I.gens
    for r in range(1, len(gens) + 1):
        for sub in combinations(gens, r):
            l = sub[0]
            for g in sub[1:]:
                l = mono_lcm(l, g)
            rem = d - mono_degree(l)
            if rem >= 0:
                total += (-1) ** (r + 1) * comb(n - 1 + rem, n - 1)
    return total


def fiber_ideal_check(Ip: MonomialIdeal, I: MonomialIdeal, Jp: MonomialIdeal, J: MonomialIdeal) -> bool:
    """(Ip + J) cap (I + Jp) == Ip + I*J + Jp, given Ip <= I and Jp <= J."""
    if not ideal_contains(I, Ip):
        raise ValueError("Ip must be contained in I")
    if not ideal_contains(J, Jp):
        raise ValueError("Jp must be contained in J")
    left = ideal_intersection(ideal_sum(Ip, J), ideal_sum(I, Jp))
    right = ideal_sum(ideal_sum(Ip, Jp), ideal_product(I, J))
    return left == right
