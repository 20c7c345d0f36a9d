"""Bounded complexes of graded free modules with exact polynomial matrices.

A complex stores, per homological degree n, the twist tuple of a free module
and the matrix of the differential into degree n-1.  Columns of a matrix
correspond to generators of the source, rows to generators of the target;
entry (i, j) must be homogeneous of degree twists_n[j] - twists_{n-1}[i].

Sign conventions used throughout (each one is locked in by d^2 = 0 tests):
  * suspension by l multiplies every differential by (-1)^l;
  * the cone on f : S -> T has degree-n piece T_n (+) S_{n-1} and block
    differential [[dT, f], [0, -dS]];
  * the tensor differential is d(a (x) b) = da (x) b + (-1)^|a| a (x) db,
    with basis pairs ordered left-factor-major, left homological degree
    descending within a fixed total degree.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterator, Tuple

from .ring import Polynomial, RingSpec, mono_degree, poly_parse


class PolyMatrix:
    """Dense-addressed, sparsity-aware matrix of polynomials."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring: RingSpec, nrows: int, ncols: int, rows):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(tuple(r) for r in rows)
        if len(self.rows) != nrows or any(len(r) != ncols for r in self.rows):
            raise ValueError("matrix shape mismatch")

    @staticmethod
    def zero(ring: RingSpec, nrows: int, ncols: int) -> "PolyMatrix":
        z = Polynomial.zero(ring)
        return PolyMatrix(ring, nrows, ncols, [[z] * ncols for _ in range(nrows)])

    @staticmethod
    def identity(ring: RingSpec, n: int) -> "PolyMatrix":
        z, o = Polynomial.zero(ring), Polynomial.one(ring)
        return PolyMatrix(
            ring, n, n, [[o if i == j else z for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def from_entries(ring: RingSpec, nrows: int, ncols: int, entries: dict) -> "PolyMatrix":
        rows = [[Polynomial.zero(ring)] * ncols for _ in range(nrows)]
        for (i, j), p in entries.items():
            rows[i][j] = p
        return PolyMatrix(ring, nrows, ncols, rows)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.rows[i][j]

    def nonzero_entries(self) -> Iterator[Tuple[int, int, Polynomial]]:
        for i, row in enumerate(self.rows):
            for j, p in enumerate(row):
                if not p.is_zero():
                    yield i, j, p

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.rows for p in row)

    def mul(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError("inner dimensions disagree")
        acc: dict = {}
        for i, row in enumerate(self.rows):
            for k, a in enumerate(row):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.rows[k]):
                    if b.is_zero():
                        continue
                    prod = a * b
                    key = (i, j)
                    acc[key] = acc[key] + prod if key in acc else prod
        return PolyMatrix.from_entries(self.ring, self.nrows, other.ncols, acc)

    def neg(self) -> "PolyMatrix":
        return PolyMatrix(
            self.ring, self.nrows, self.ncols, [[-p for p in row] for row in self.rows]
        )

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row counts disagree")
        return PolyMatrix(
            self.ring,
            self.nrows,
            self.ncols + other.ncols,
            [a + b for a, b in zip(self.rows, other.rows)],
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyMatrix)
            and self.ring == other.ring
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols))

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(p) for p in row) for row in self.rows) + "]"


class ChainComplex:
    """Bounded complex of graded free modules, indexed by homological degree."""

    __slots__ = ("ring", "modules", "diffs")

    def __init__(self, ring: RingSpec, modules: Dict[int, tuple], diffs: Dict[int, PolyMatrix], check: bool = True):
        self.ring = ring
        self.modules = {n: tuple(tw) for n, tw in modules.items() if len(tw) > 0}
        self.diffs = {}
        for n, mat in diffs.items():
            want_rows = len(self.modules.get(n - 1, ()))
            want_cols = len(self.modules.get(n, ()))
            if mat.nrows != want_rows or mat.ncols != want_cols:
                raise ValueError(f"differential at degree {n} has shape "
                                 f"{mat.nrows}x{mat.ncols}, expected {want_rows}x{want_cols}")
            if not mat.is_zero():
                self.diffs[n] = mat
        if check:
            self._check_homogeneous()

    def _check_homogeneous(self):
        for n, mat in self.diffs.items():
            src, tgt = self.modules[n], self.modules[n - 1]
            for i, j, p in mat.nonzero_entries():
                want = src[j] - tgt[i]
                degs = {mono_degree(m) for m in p.terms}
                if degs != {want}:
                    raise ValueError(
                        f"entry ({i},{j}) of differential {n} is not homogeneous "
                        f"of degree {want}: {p}"
                    )

    # queries ------------------------------------------------------------
    def rank(self, n: int) -> int:
        return len(self.modules.get(n, ()))

    def twists(self, n: int) -> tuple:
        return self.modules.get(n, ())

    def diff(self, n: int) -> PolyMatrix:
        if n in self.diffs:
            return self.diffs[n]
        return PolyMatrix.zero(self.ring, self.rank(n - 1), self.rank(n))

    def support(self) -> list:
        return sorted(self.modules)

    def min_degree(self) -> int:
        return min(self.modules) if self.modules else 0

    def max_degree(self) -> int:
        return max(self.modules) if self.modules else 0

    def is_empty(self) -> bool:
        return not self.modules

    def max_twist(self) -> int:
        return max((max(tw) for tw in self.modules.values()), default=0)

    def total_rank(self) -> int:
        return sum(len(tw) for tw in self.modules.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainComplex):
            return False
        if self.ring != other.ring or self.modules != other.modules:
            return False
        return all(self.diff(n) == other.diff(n) for n in self.modules)

    def __str__(self) -> str:
        if self.is_empty():
            return "0"
        return " <- ".join(
            f"R^{self.rank(n)}{list(self.twists(n))}" for n in self.support()
        )


def zero_complex(ring: RingSpec) -> ChainComplex:
    return ChainComplex(ring, {}, {})


# ------------------------------------------------------------- operations

def suspension(C: ChainComplex, l: int) -> ChainComplex:
    """Shift degrees up by l; differentials pick up the sign (-1)^l."""
    modules = {n + l: tw for n, tw in C.modules.items()}
    sign = -1 if l % 2 else 1
    diffs = {
        n + l: (mat if sign == 1 else mat.neg()) for n, mat in C.diffs.items()
    }
    return ChainComplex(C.ring, modules, diffs, check=False)


def truncate_geq(C: ChainComplex, p: int) -> ChainComplex:
    """Hard truncation: keep degrees >= p, zero the differential at p."""
    modules = {n: tw for n, tw in C.modules.items() if n >= p}
    diffs = {n: mat for n, mat in C.diffs.items() if n > p}
    return ChainComplex(C.ring, modules, diffs, check=False)


def tensor_basis(C: ChainComplex, D: ChainComplex, n: int) -> list:
    """Ordered basis labels (i, a, j, b) of (C (x) D)_n: left degree i
    descending, then left generator index, then right generator index."""
    out = []
    for i in sorted(C.modules, reverse=True):
        j = n - i
        if j not in D.modules:
            continue
        for a in range(C.rank(i)):
            for b in range(D.rank(j)):
                out.append((i, a, j, b))
    return out


def tensor(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    if C.ring != D.ring:
        raise ValueError("tensor factors live in different rings")
    ring = C.ring
    if C.is_empty() or D.is_empty():
        return zero_complex(ring)
    degrees = sorted({i + j for i in C.modules for j in D.modules})
    modules, bases = {}, {}
    for n in degrees:
        labels = tensor_basis(C, D, n)
        bases[n] = {lab: pos for pos, lab in enumerate(labels)}
        modules[n] = tuple(C.twists(i)[a] + D.twists(j)[b] for (i, a, j, b) in labels)
    diffs = {}
    for n in degrees:
        if n - 1 not in bases:
            continue
        tgt = bases[n - 1]
        entries: dict = {}
        for col, (i, a, j, b) in enumerate(tensor_basis(C, D, n)):
            dC = C.diff(i)
            for r in range(dC.nrows):
                p = dC.entry(r, a)
                if p.is_zero():
                    continue
                row = tgt[(i - 1, r, j, b)]
                entries[(row, col)] = p if (row, col) not in entries else entries[(row, col)] + p
            dD = D.diff(j)
            sgn = -1 if i % 2 else 1
            for r in range(dD.nrows):
                p = dD.entry(r, b)
                if p.is_zero():
                    continue
                if sgn < 0:
                    p = -p
                row = tgt[(i, a, j - 1, r)]
                entries[(row, col)] = p if (row, col) not in entries else entries[(row, col)] + p
        mat = PolyMatrix.from_entries(ring, len(tgt), len(bases[n]), entries)
        diffs[n] = mat
    return ChainComplex(ring, modules, diffs, check=False)


def direct_sum(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    if C.ring != D.ring:
        raise ValueError("summands live in different rings")
    ring = C.ring
    modules = {}
    for n in set(C.modules) | set(D.modules):
        modules[n] = C.twists(n) + D.twists(n)
    diffs = {}
    for n in modules:
        rc, rd = C.rank(n), D.rank(n)
        tc, td = C.rank(n - 1), D.rank(n - 1)
        if tc + td == 0 or rc + rd == 0:
            continue
        entries = {}
        for i, j, p in C.diff(n).nonzero_entries():
            entries[(i, j)] = p
        for i, j, p in D.diff(n).nonzero_entries():
            entries[(tc + i, rc + j)] = p
        diffs[n] = PolyMatrix.from_entries(ring, tc + td, rc + rd, entries)
    return ChainComplex(ring, modules, diffs, check=False)


@dataclass
class ChainMap:
    """Degreewise map between complexes; mats[n] sends source_n to target_n."""

    source: ChainComplex
    target: ChainComplex
    mats: Dict[int, PolyMatrix]

    def mat(self, n: int) -> PolyMatrix:
        if n in self.mats:
            return self.mats[n]
        return PolyMatrix.zero(self.source.ring, self.target.rank(n), self.source.rank(n))


def chain_map_defect(f: ChainMap):
    """First degree where the square d_target f - f d_source fails, or None."""
    degrees = set(f.source.modules) | set(f.target.modules)
    for n in sorted(degrees):
        lhs = f.target.diff(n).mul(f.mat(n))
        rhs = f.mat(n - 1).mul(f.source.diff(n))
        for i in range(lhs.nrows):
            for j in range(lhs.ncols):
                if lhs.entry(i, j) != rhs.entry(i, j):
                    return n
    return None


def is_chain_map(f: ChainMap) -> bool:
    for n, mat in f.mats.items():
        if mat.nrows != f.target.rank(n) or mat.ncols != f.source.rank(n):
            return False
    return chain_map_defect(f) is None


def cone(f: ChainMap) -> ChainComplex:
    """Mapping cone: degree n is target_n (+) source_{n-1}, differential
    [[d_target, f], [0, -d_source]].  Refuses maps that are not chain maps."""
    bad = chain_map_defect(f)
    if bad is not None:
        raise ValueError(f"not a chain map: square at degree {bad} does not commute")
    S, T = f.source, f.target
    ring = T.ring
    modules = {}
    for n in set(T.modules) | {m + 1 for m in S.modules}:
        tw = T.twists(n) + S.twists(n - 1)
        if tw:
            modules[n] = tw
    diffs = {}
    for n in modules:
        tc, sc = T.rank(n), S.rank(n - 1)
        tr, sr = T.rank(n - 1), S.rank(n - 2)
        if tr + sr == 0:
            continue
        entries = {}
        for i, j, p in T.diff(n).nonzero_entries():
            entries[(i, j)] = p
        for i, j, p in f.mat(n - 1).nonzero_entries():
            entries[(i, tc + j)] = p
        for i, j, p in S.diff(n - 1).nonzero_entries():
            entries[(tr + i, tc + j)] = -p
        diffs[n] = PolyMatrix.from_entries(ring, tr + sr, tc + sc, entries)
    return ChainComplex(ring, modules, diffs, check=False)


def is_complex(C: ChainComplex) -> bool:
    """d_{n-1} d_n = 0 for all n."""
    for n in C.support():
        if C.rank(n - 1) == 0 or C.rank(n - 2) == 0:
            continue
        if not C.diff(n - 1).mul(C.diff(n)).is_zero():
            return False
    return True


def is_minimal(C: ChainComplex) -> bool:
    """No differential entry has a nonzero constant term."""
    F = C.ring.coeff_field
    for mat in C.diffs.values():
        for _, _, p in mat.nonzero_entries():
            if p.constant_coeff() != F.zero:
                return False
    return True


# ------------------------------------------------------------ power series

@dataclass(frozen=True)
class PowerSeries:
    """Truncated integer power series in one variable t; index = degree."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("series needs at least the degree-0 coefficient")

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.truncation:
            raise IndexError(f"coefficient {n} beyond truncation {self.truncation}")
        return self.coeffs[n]

    @staticmethod
    def of(coeffs, truncation: int) -> "PowerSeries":
        cs = list(coeffs)[: truncation + 1]
        cs += [0] * (truncation + 1 - len(cs))
        return PowerSeries(tuple(cs))

    @staticmethod
    def one(truncation: int) -> "PowerSeries":
        return PowerSeries.of([1], truncation)

    @staticmethod
    def one_plus_t_power(m: int, truncation: int) -> "PowerSeries":
        from math import comb

        return PowerSeries.of([comb(m, k) for k in range(m + 1)], truncation)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        D = min(self.truncation, other.truncation)
        return PowerSeries(tuple(self.coeffs[n] + other.coeffs[n] for n in range(D + 1)))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        D = min(self.truncation, other.truncation)
        return PowerSeries(tuple(self.coeffs[n] - other.coeffs[n] for n in range(D + 1)))

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        D = min(self.truncation, other.truncation)
        out = [0] * (D + 1)
        for i, a in enumerate(self.coeffs[: D + 1]):
            if a == 0:
                continue
            for j in range(0, D + 1 - i):
                b = other.coeffs[j] if j <= other.truncation else 0
                out[i + j] += a * b
        return PowerSeries(tuple(out))

    def scale(self, c: int) -> "PowerSeries":
        return PowerSeries(tuple(c * a for a in self.coeffs))

    def shift_up(self, k: int) -> "PowerSeries":
        """Multiply by t^k (truncation grows with the shift)."""
        return PowerSeries((0,) * k + self.coeffs)

    def shift_down(self, k: int) -> "PowerSeries":
        """Divide by t^k; the low coefficients must vanish."""
        if any(c != 0 for c in self.coeffs[:k]):
            raise ValueError(f"series is not divisible by t^{k}")
        if len(self.coeffs) <= k:
            raise ValueError("truncation too small to shift down")
        return PowerSeries(self.coeffs[k:])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __str__(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if n == 0:
                parts.append(str(c))
            else:
                base = "t" if n == 1 else f"t^{n}"
                parts.append(base if c == 1 else f"{c}*{base}")
        return " + ".join(parts) if parts else "0"


def generating_function(C: ChainComplex, truncation: int) -> PowerSeries:
    """sum_n rank(C_n) t^n.  The complex must be supported in degrees >= 0."""
    if not C.is_empty() and C.min_degree() < 0:
        raise ValueError("complex has modules in negative degrees")
    return PowerSeries.of(
        [C.rank(n) for n in range(max(C.max_degree(), 0) + 1)], truncation
    )


# ------------------------------------------------------------- Betti table

class BettiTable:
    """Graded Betti numbers: entries[(l, k)] = beta_{l,k}, zero if absent."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict):
        self.entries = {
            (int(l), int(k)): int(v) for (l, k), v in entries.items() if v != 0
        }

    def entry(self, l: int, k: int) -> int:
        return self.entries.get((l, k), 0)

    def totals(self) -> dict:
        out: dict = {}
        for (l, _), v in self.entries.items():
            out[l] = out.get(l, 0) + v
        return dict(sorted(out.items()))

    def total(self, l: int) -> int:
        return sum(v for (ll, _), v in self.entries.items() if ll == l)

    def max_l(self) -> int:
        return max((l for l, _ in self.entries), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, BettiTable) and self.entries == other.entries

    def to_json_dict(self) -> dict:
        totals = {str(l): v for l, v in self.totals().items()}
        graded = {
            f"{l},{k}": v
            for (l, k), v in sorted(self.entries.items())
        }
        return {"totals": totals, "graded": graded}

    @staticmethod
    def from_json_dict(doc: dict) -> "BettiTable":
        entries = {}
        for key, v in doc["graded"].items():
            l, k = key.split(",")
            entries[(int(l), int(k))] = int(v)
        return BettiTable(entries)

    def render_text(self) -> str:
        """Aligned table, rows indexed by k - l, columns by l, '.' for zero."""
        if not self.entries:
            return "(empty)\n"
        ls = sorted({l for l, _ in self.entries})
        lo = min(l for l in range(0, max(ls) + 1))
        hi = max(ls)
        rows = sorted({k - l for l, k in self.entries})
        cols = list(range(lo, hi + 1))
        tot = self.totals()
        width = max(
            len(str(v)) for v in list(tot.values()) + cols + [0]
        ) + 2
        head = "      " + "".join(str(l).rjust(width) for l in cols)
        lines = [head]
        for r in range(min(rows), max(rows) + 1):
            cells = []
            for l in cols:
                v = self.entry(l, l + r)
                cells.append((str(v) if v else ".").rjust(width))
            lines.append(f"{r}:".rjust(6) + "".join(cells))
        lines.append("total:" + "".join(str(tot.get(l, 0)).rjust(width) for l in cols))
        return "\n".join(lines) + "\n"


def graded_betti(C: ChainComplex) -> BettiTable:
    """Read beta_{l,k} off a minimal complex: the twist multiplicities."""
    if not is_minimal(C):
        raise ValueError("graded Betti numbers need a minimal complex")
    entries: dict = {}
    for n, tw in C.modules.items():
        for w in tw:
            entries[(n, w)] = entries.get((n, w), 0) + 1
    return BettiTable(entries)


# ------------------------------------------------------------------- JSON

def complex_to_json_dict(C: ChainComplex) -> dict:
    modules = {str(n): list(C.twists(n)) for n in C.support()}
    diffs = {}
    for n in C.support():
        mat = C.diff(n)
        if mat.ncols == 0:
            continue
        diffs[str(n)] = [[str(p) for p in row] for row in mat.rows]
    return {"ring": C.ring.describe(), "modules": modules, "differentials": diffs}


def complex_from_json_dict(doc: dict, check: bool = True) -> ChainComplex:
    ring = RingSpec.from_description(doc["ring"])
    modules = {int(n): tuple(tw) for n, tw in doc["modules"].items()}
    diffs = {}
    for n, rows in doc.get("differentials", {}).items():
        n = int(n)
        nrows = len(modules.get(n - 1, ()))
        ncols = len(modules.get(n, ()))
        mat_rows = [[poly_parse(s, ring) for s in row] for row in rows]
        diffs[n] = PolyMatrix(ring, nrows, ncols, mat_rows)
    return ChainComplex(ring, modules, diffs, check=check)


def complex_to_json(C: ChainComplex) -> str:
    return json.dumps(complex_to_json_dict(C), indent=2, sort_keys=True)


def complex_from_json(text: str, check: bool = True) -> ChainComplex:
    return complex_from_json_dict(json.loads(text), check=check)
