"""Star product of two augmented complexes.

Given resolutions X of R/I and Y of R/J with rank-one degree-0 pieces, the
star product glues the positive parts: degree n >= 1 is the degree-(n+1)
piece of X_{>=1} (x) Y_{>=1}, degree 0 is R again.  On a basis pair a * b,

    d(a * b) = [ |a| > 1 ]  da * b
             + [ |b| > 1 ]  (-1)^{|a|} a * db
             + [ |a| = |b| = 1 ]  (d a) (d b)

where the last case multiplies the two augmentation images inside R.  When
I and J are Tor-independent this resolves R/IJ, and it is minimal whenever
X and Y are.
"""
from __future__ import annotations

from .complexes import ChainComplex, PolyMatrix, graded_betti


def _check_bottom(C: ChainComplex, name: str):
    if C.rank(0) != 1 or C.twists(0) != (0,):
        raise ValueError(f"{name} must have a single twist-0 generator in degree 0")
    if C.min_degree() < 0:
        raise ValueError(f"{name} has modules in negative degrees")


def star_basis(X: ChainComplex, Y: ChainComplex, n: int) -> list:
    """Ordered basis labels (i, a, j, b) of (X * Y)_n for n >= 1: left
    homological degree ascending, then left index, then right index."""
    out = []
    for i in sorted(X.modules):
        if i < 1:
            continue
        j = n + 1 - i
        if j < 1 or j not in Y.modules:
            continue
        for a in range(X.rank(i)):
            for b in range(Y.rank(j)):
                out.append((i, a, j, b))
    return out


def star_product(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    if X.ring != Y.ring:
        raise ValueError("star factors live in different rings")
    ring = X.ring
    _check_bottom(X, "left factor")
    _check_bottom(Y, "right factor")

    top = X.max_degree() + Y.max_degree() - 1
    modules = {0: (0,)}
    bases = {}
    for n in range(1, max(top, 0) + 1):
        labels = star_basis(X, Y, n)
        if not labels:
            continue
        bases[n] = {lab: pos for pos, lab in enumerate(labels)}
        modules[n] = tuple(
            X.twists(i)[a] + Y.twists(j)[b] for (i, a, j, b) in labels
        )
    diffs = {}
    for n in sorted(bases):
        labels = star_basis(X, Y, n)
        entries: dict = {}
        if n == 1:
            dX1, dY1 = X.diff(1), Y.diff(1)
            for col, (i, a, j, b) in enumerate(labels):
                p = dX1.entry(0, a) * dY1.entry(0, b)
                if not p.is_zero():
                    entries[(0, col)] = p
            diffs[1] = PolyMatrix.from_entries(ring, 1, len(labels), entries)
            continue
        tgt = bases.get(n - 1, {})
        for col, (i, a, j, b) in enumerate(labels):
            if i > 1:
                dX = X.diff(i)
                for r in range(dX.nrows):
                    p = dX.entry(r, a)
                    if p.is_zero():
                        continue
                    row = tgt[(i - 1, r, j, b)]
                    key = (row, col)
                    entries[key] = entries[key] + p if key in entries else p
            if j > 1:
                dY = Y.diff(j)
                neg = i % 2 == 1
                for s in range(dY.nrows):
                    q = dY.entry(s, b)
                    if q.is_zero():
                        continue
                    if neg:
                        q = -q
                    row = tgt[(i, a, j - 1, s)]
                    key = (row, col)
                    entries[key] = entries[key] + q if key in entries else q
        diffs[n] = PolyMatrix.from_entries(ring, len(tgt), len(labels), entries)
    return ChainComplex(ring, modules, diffs, check=False)


def star_betti_check(X: ChainComplex, Y: ChainComplex) -> bool:
    """Verify, for minimal X and Y, that the star product's Betti table is
    the shifted convolution of the factors' tables:

        beta_{l,k}(X * Y) = sum_{i=1..l} sum_j beta_{i,j}(X) beta_{l+1-i, k-j}(Y)

    and that total ranks satisfy the same identity degreewise."""
    from .complexes import is_minimal

    if not (is_minimal(X) and is_minimal(Y)):
        raise ValueError("star_betti_check wants minimal inputs")
    S = star_product(X, Y)
    bX, bY, bS = graded_betti(X), graded_betti(Y), graded_betti(S)
    top = X.max_degree() + Y.max_degree() - 1
    kmax = X.max_twist() + Y.max_twist()
    for l in range(1, top + 1):
        want_total = sum(
            X.rank(i) * Y.rank(l + 1 - i) for i in range(1, l + 1)
        )
        if S.rank(l) != want_total:
            return False
        for k in range(kmax + 1):
            want = 0
            for i in range(1, l + 1):
                for j in range(k + 1):
                    want += bX.entry(i, j) * bY.entry(l + 1 - i, k - j)
            if bS.entry(l, k) != want:
                return False
    return bS.entry(0, 0) == 1
