"""Exact Gaussian elimination over the coefficient field.

Prime-field matrices ride on int64 numpy arrays: every intermediate product
stays below p^2 < 2^63, and a mod after each pivot step keeps entries
canonical, so the arithmetic is exact.  Rational matrices use Fraction rows;
slower, but that path only runs on audit-sized problems.

Pivoting is deterministic: first nonzero entry scanning rows top-down within
each column, columns left to right.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from .fields import PrimeField


def rank(field, nrows: int, ncols: int, entries: dict) -> int:
    """Rank of a sparse matrix given as {(i, j): field element}."""
    if nrows == 0 or ncols == 0 or not entries:
        return 0
    if isinstance(field, PrimeField):
        A = np.zeros((nrows, ncols), dtype=np.int64)
        for (i, j), c in entries.items():
            A[i, j] = c
        return _rank_modp(A, field.p)
    rows = [[Fraction(0)] * ncols for _ in range(nrows)]
    for (i, j), c in entries.items():
        rows[i][j] = c
    return _rank_frac(rows)


def solve(field, nrows: int, ncols: int, entries: dict, rhs: list) -> Optional[list]:
    """One solution of A x = rhs (free variables set to zero), or None."""
    if isinstance(field, PrimeField):
        A = np.zeros((nrows, ncols + 1), dtype=np.int64)
        for (i, j), c in entries.items():
            A[i, j] = c
        for i, c in enumerate(rhs):
            A[i, ncols] = c
        return _solve_modp(A, ncols, field.p)
    rows = [[Fraction(0)] * (ncols + 1) for _ in range(nrows)]
    for (i, j), c in entries.items():
        rows[i][j] = c
    for i, c in enumerate(rhs):
        rows[i][ncols] = Fraction(c)
    return _solve_frac(rows, ncols)


def _rank_modp(A: np.ndarray, p: int) -> int:
    A %= p
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = A[r, c:] * inv % p
        below = A[r + 1 :, c]
        hit = np.nonzero(below)[0]
        if hit.size:
            block = A[r + 1 + hit, c:]
            block -= np.outer(below[hit], A[r, c:])
            A[r + 1 + hit, c:] = block % p
        r += 1
    return r


def _solve_modp(A: np.ndarray, ncols: int, p: int) -> Optional[list]:
    A %= p
    m = A.shape[0]
    pivots = []  # (row, col)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = A[r, c:] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            block = A[hit, c:]
            block -= np.outer(col[hit], A[r, c:])
            A[hit, c:] = block % p
        pivots.append((r, c))
        r += 1
    if np.any(A[r:, ncols]):
        return None  # inconsistent
    x = [0] * ncols
    for row, col in pivots:
        x[col] = int(A[row, ncols])
    return x


def _rank_frac(rows) -> int:
    m = len(rows)
    n = len(rows[0]) if m else 0
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def _solve_frac(rows, ncols: int) -> Optional[list]:
    m = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
    for i in range(r, m):
        if rows[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for row, col in pivots:
        x[col] = rows[row][ncols]
    return x
