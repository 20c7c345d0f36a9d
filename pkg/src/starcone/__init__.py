"""Exact free resolutions of R/(I' + IJ + J') over a polynomial ring.

Builds the star product of two minimal resolutions, glues on the I'- and
J'-corrections by a mapping cone, evaluates the closed-form Betti and
Poincare expressions, and certifies every construction by degreewise
homology over an exact coefficient field.
"""

from .complexes import (
    BettiTable,
    ChainComplex,
    ChainMap,
    PolyMatrix,
    PowerSeries,
    complex_from_json,
    complex_to_json,
    cone,
    direct_sum,
    generating_function,
    graded_betti,
    is_chain_map,
    is_complex,
    is_minimal,
    suspension,
    tensor,
    truncate_geq,
    zero_complex,
)
from .fiber import (
    FiberBuild,
    FiberInstance,
    HypothesisViolation,
    LiftError,
    MinimalityCertificate,
    block_instance,
    build_fiber,
    certify_minimal,
    cone_phi,
    cone_psi,
    default_degree_bound,
    fiber_resolution,
    lift_chain_map,
    make_instance,
)
from .fields import PrimeField, RationalField
from .formulas import (
    betti_fiber,
    betti_product,
    betti_product_table,
    fiber_betti_table,
    graded_betti_fiber,
    graded_betti_product,
    poincare_identity_1,
    poincare_identity_2,
    poincare_product,
    series_of_ideal,
    vandermonde_check,
)
from .homcheck import (
    HomologyReport,
    TorReport,
    certifies_resolution_of,
    homology_dims,
    is_tor_independent,
    tor_dims,
)
from .resolutions import (
    is_regular_sequence_monomials,
    koszul,
    minimize,
    resolution_of,
    taylor,
    trivial_resolution,
)
from .ring import (
    MonomialIdeal,
    Polynomial,
    PolyParseError,
    RingSpec,
    fiber_ideal_check,
    hilbert_function,
    ideal_contains,
    ideal_intersection,
    ideal_membership,
    ideal_product,
    ideal_sum,
    mono_parse,
    poly_parse,
)
from .star import star_betti_check, star_product

__version__ = "0.1.0"

__all__ = [
    "BettiTable",
    "ChainComplex",
    "ChainMap",
    "FiberBuild",
    "FiberInstance",
    "HomologyReport",
    "HypothesisViolation",
    "LiftError",
    "MinimalityCertificate",
    "MonomialIdeal",
    "PolyMatrix",
    "PolyParseError",
    "Polynomial",
    "PowerSeries",
    "PrimeField",
    "RationalField",
    "RingSpec",
    "TorReport",
    "betti_fiber",
    "betti_product",
    "betti_product_table",
    "block_instance",
    "build_fiber",
    "certifies_resolution_of",
    "certify_minimal",
    "complex_from_json",
    "complex_to_json",
    "cone",
    "cone_phi",
    "cone_psi",
    "default_degree_bound",
    "direct_sum",
    "fiber_betti_table",
    "fiber_ideal_check",
    "fiber_resolution",
    "generating_function",
    "graded_betti",
    "graded_betti_fiber",
    "graded_betti_product",
    "hilbert_function",
    "homology_dims",
    "ideal_contains",
    "ideal_intersection",
    "ideal_membership",
    "ideal_product",
    "ideal_sum",
    "is_chain_map",
    "is_complex",
    "is_minimal",
    "is_regular_sequence_monomials",
    "is_tor_independent",
    "koszul",
    "lift_chain_map",
    "make_instance",
    "minimize",
    "mono_parse",
    "poincare_identity_1",
    "poincare_identity_2",
    "poincare_product",
    "poly_parse",
    "resolution_of",
    "series_of_ideal",
    "star_betti_check",
    "star_product",
    "suspension",
    "taylor",
    "tensor",
    "tor_dims",
    "trivial_resolution",
    "truncate_geq",
    "vandermonde_check",
    "zero_complex",
]
