"""Closed-form Betti numbers and Poincare series identities.

With b_i = beta_i(R/I), c_j = beta_j(R/J) and X, Y minimal, the star
product gives the convolution

  beta_l(R/IJ) = sum_{i=1}^{l} b_i c_{l+1-i}        (l >= 1),

graded version with an inner convolution over internal degree.  For the
two-block quotient F = R/(I' + IJ + J') with I = <x_1..x_m>,
J = <y_1..y_n>, I' <= I^2, J' <= J^2:

  beta_l(F) = sum_{t=1}^{l} [ beta_t(R/I') C(n, l-t) + C(m, l-t) beta_t(R/J') ]
              + C(m+n, l+1) - C(m, l+1) - C(n, l+1),

and the graded refinement adds the star table to the two convolutions of
the primed tables against the opposite Koszul factor.  Both Poincare
identities below are packaged as residuals that a correct construction
drives to zero.
"""
from __future__ import annotations

from math import comb

from .complexes import BettiTable, PowerSeries


# ---------------------------------------------------------------- products

def betti_product(bI: BettiTable, bJ: BettiTable, ell: int) -> int:
    """Total Betti number of R/IJ in homological degree ell >= 1."""
    if ell < 0:
        raise ValueError("homological degree must be nonnegative")
    if ell == 0:
        return 1
    tI = bI.totals()
    tJ = bJ.totals()
    return sum(tI.get(i, 0) * tJ.get(ell + 1 - i, 0) for i in range(1, ell + 1))


def graded_betti_product(bI: BettiTable, bJ: BettiTable, ell: int, k: int) -> int:
    """Graded Betti number beta_{ell,k}(R/IJ)."""
    if ell == 0:
        return 1 if k == 0 else 0
    total = 0
    for i in range(1, ell + 1):
        for j in range(0, k + 1):
            total += bI.entry(i, j) * bJ.entry(ell + 1 - i, k - j)
    return total


def betti_product_table(bI: BettiTable, bJ: BettiTable) -> BettiTable:
    top = bI.max_l() + bJ.max_l() - 1
    kmax = max((k for (_, k) in bI.entries), default=0) + max(
        (k for (_, k) in bJ.entries), default=0
    )
    entries = {(0, 0): 1}
    for ell in range(1, top + 1):
        for k in range(0, kmax + 1):
            v = graded_betti_product(bI, bJ, ell, k)
            if v:
                entries[(ell, k)] = v
    return BettiTable(entries)


def poincare_product(PI: PowerSeries, PJ: PowerSeries) -> PowerSeries:
    """Poincare series of R/IJ from those of R/I and R/J:
    P = 1 + (PI - 1)(PJ - 1)/t."""
    one = PowerSeries.one(PI.truncation)
    for P in (PI, PJ):
        if P.coeffs[0] != 1:
            raise ValueError("a quotient's Poincare series starts at 1")
    prod = (PI - one) * (PJ - PowerSeries.one(PJ.truncation))
    return prod.shift_down(1) + PowerSeries.one(prod.truncation - 1)


def series_of_ideal(P_quotient: PowerSeries) -> PowerSeries:
    """Pass from the series of R/L to the series of the module L:
    (P - 1)/t."""
    one = PowerSeries.one(P_quotient.truncation)
    return (P_quotient - one).shift_down(1)


# ------------------------------------------------------- two-block fibers

def betti_fiber(ell: int, m: int, n: int, bIp: BettiTable, bJp: BettiTable) -> int:
    """Total Betti number of R/(I' + IJ + J') in the two-block setting."""
    if ell < 0:
        raise ValueError("homological degree must be nonnegative")
    if ell == 0:
        return 1
    tIp = bIp.totals()
    tJp = bJp.totals()
    acc = comb(m + n, ell + 1) - comb(m, ell + 1) - comb(n, ell + 1)
    for t in range(1, ell + 1):
        acc += tIp.get(t, 0) * comb(n, ell - t) + comb(m, ell - t) * tJp.get(t, 0)
    return acc


def graded_betti_fiber(ell: int, k: int, bIJ: BettiTable, bIp: BettiTable,
                       bI: BettiTable, bJp: BettiTable, bJ: BettiTable) -> int:
    """Graded Betti number of the fiber quotient: the star table plus the
    two primed-against-opposite convolutions."""
    if ell == 0:
        return 1 if k == 0 else 0
    acc = bIJ.entry(ell, k)
    for i in range(1, ell + 1):
        for j in range(0, k + 1):
            acc += bIp.entry(i, j) * bJ.entry(ell - i, k - j)
            acc += bI.entry(ell - i, k - j) * bJp.entry(i, j)
    return acc


def fiber_betti_table(bIJ: BettiTable, bIp: BettiTable, bI: BettiTable,
                      bJp: BettiTable, bJ: BettiTable) -> BettiTable:
    top = max(
        bIJ.max_l(),
        bIp.max_l() + bJ.max_l(),
        bI.max_l() + bJp.max_l(),
    )
    ks = [k for table in (bIJ, bIp, bI, bJp, bJ) for (_, k) in table.entries]
    kmax = 2 * max(ks, default=0)
    entries = {(0, 0): 1}
    for ell in range(1, top + 1):
        for k in range(0, kmax + 1):
            v = graded_betti_fiber(ell, k, bIJ, bIp, bI, bJp, bJ)
            if v:
                entries[(ell, k)] = v
    return BettiTable(entries)


# ----------------------------------------------------- Poincare identities

def poincare_identity_1(PF: PowerSeries, P_IpJ: PowerSeries, P_IJp: PowerSeries,
                        P_IplusJ: PowerSeries, P_prod_ideal: PowerSeries) -> PowerSeries:
    """Residual of the inclusion-exclusion identity

      PF = P_{R/(I'+J)} + P_{R/(I+J')} - P_{R/(I+J)} + t(1+t) P_{IJ},

    where P_{IJ} is the series of the product ideal as a module.  Zero
    exactly when the identity holds up to the common truncation.
    """
    t_part = P_prod_ideal.shift_up(1) + P_prod_ideal.shift_up(2)
    return PF - P_IpJ - P_IJp + P_IplusJ - t_part


def poincare_identity_2(PF: PowerSeries, PIp: PowerSeries, PJp: PowerSeries,
                        m: int, n: int) -> PowerSeries:
    """Residual of the two-block closed form

      t [ PF - (1+t)^n PIp - (1+t)^m PJp + (1+t)^{m+n} ]
        = (t+1) ((1+t)^m - 1) ((1+t)^n - 1).
    """
    N = min(PF.truncation, PIp.truncation, PJp.truncation)
    kozm = PowerSeries.one_plus_t_power(m, N + 1)
    kozn = PowerSeries.one_plus_t_power(n, N + 1)
    kozmn = PowerSeries.one_plus_t_power(m + n, N + 1)
    one = PowerSeries.one(N + 1)
    lhs = (PF - kozn * PIp - kozm * PJp + kozmn).shift_up(1)
    t_plus_1 = PowerSeries.of([1, 1], N + 1)
    rhs = t_plus_1 * (kozm - one) * (kozn - one)
    return lhs - rhs


def vandermonde_check(m: int, n: int, r: int) -> bool:
    """C(m+n, r) = sum_k C(m, k) C(n, r-k): the combinatorial identity the
    rank counts reduce to."""
    return comb(m + n, r) == sum(comb(m, k) * comb(n, r - k) for k in range(0, r + 1))
