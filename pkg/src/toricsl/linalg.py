"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  Vectors are plain tuples of fractions; matrices are
:class:`RatMatrix`, an immutable row-major container that remembers its
column count even when it has no rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

RatVector = tuple  # tuple[Fraction, ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted: %r" % (x,))
    return Fraction(x)


def vec(xs: Iterable) -> RatVector:
    return tuple(as_fraction(x) for x in xs)


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise ValueError("length mismatch: %d vs %d" % (len(u), len(v)))
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class RatMatrix:
    """Immutable rational matrix."""

    __slots__ = ("_rows", "ncols")

    def __init__(self, rows: Iterable[Iterable] = (), ncols: Optional[int] = None):
        rows = tuple(vec(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix: expected %d columns" % ncols)
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "RatMatrix":
        cols = [vec(c) for c in cols]
        return cls([[c[i] for c in cols] for i in range(nrows)], ncols=len(cols))

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple:
        return self._rows

    def row(self, i: int) -> RatVector:
        return self._rows[i]

    def col(self, j: int) -> RatVector:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix(self.columns(), ncols=self.nrows)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __len__(self):
        return self.nrows

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self._rows == other._rows

    def __hash__(self):
        return hash((self.ncols, self._rows))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        cols = other.columns()
        return RatMatrix([[dot(r, c) for c in cols] for r in self._rows], ncols=other.ncols)

    def apply(self, v: Sequence) -> RatVector:
        return tuple(dot(r, v) for r in self._rows)

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return RatMatrix(self._rows + other._rows, ncols=self.ncols)

    def select_columns(self, idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix([[r[j] for j in idx] for r in self._rows], ncols=len(idx))

    def tolist(self) -> list:
        return [list(r) for r in self._rows]

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return "RatMatrix([%s], ncols=%d)" % (body, self.ncols)


def _as_matrix(m) -> RatMatrix:
    return m if isinstance(m, RatMatrix) else RatMatrix(m)


def rref(m) -> tuple:
    """Reduced row echelon form of ``m`` and its pivot column indices.

    Zero rows are kept at the bottom so the result has the shape of ``m``.
    """
    m = _as_matrix(m)
    a = [list(r) for r in m.rows]
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return RatMatrix(a, ncols=ncols), pivots


def rank(m) -> int:
    return len(rref(m)[1])


def row_basis(m) -> RatMatrix:
    """Canonical basis of the row space: the nonzero rows of the RREF."""
    red, piv = rref(m)
    return RatMatrix(red.rows[: len(piv)], ncols=red.ncols)


def kernel_basis(m) -> RatMatrix:
    """Basis of ``{x : m x = 0}`` as the rows of a matrix in RREF."""
    m = _as_matrix(m)
    red, piv = rref(m)
    n = m.ncols
    free = [j for j in range(n) if j not in set(piv)]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(piv):
            x[p] = -red[i, f]
        basis.append(x)
    if not basis:
        return RatMatrix([], ncols=n)
    return row_basis(RatMatrix(basis, ncols=n))


def same_row_space(a, b) -> bool:
    return row_basis(a) == row_basis(b)


def solve(m, b) -> Optional[RatVector]:
    """One solution of ``m x = b`` (free variables set to zero), or None."""
    m = _as_matrix(m)
    aug = RatMatrix([list(r) + [bi] for r, bi in zip(m.rows, vec(b))], ncols=m.ncols + 1)
    red, piv = rref(aug)
    if m.ncols in piv:
        return None
    x = [Fraction(0)] * m.ncols
    for i, p in enumerate(piv):
        x[p] = red[i, m.ncols]
    return tuple(x)


# ---------------------------------------------------------------------------
# Exact feasibility via phase-one simplex


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    witness: Optional[RatVector] = None

    def __bool__(self):
        return self.feasible


def _phase_one(rows: list, rhs: list, nvars: int) -> Optional[list]:
    """Find ``y >= 0`` with ``rows @ y == rhs`` or return None.

    Dense tableau simplex on the auxiliary problem ``min sum(artificials)``
    using Bland's rule for both the entering and the leaving variable.
    """
    m = len(rows)
    if m == 0:
        return [Fraction(0)] * nvars
    tab = []
    for i in range(m):
        row = list(rows[i])
        b = rhs[i]
        if b < 0:
            row = [-x for x in row]
            b = -b
        tab.append(row + [Fraction(int(k == i)) for k in range(m)] + [b])
    width = nvars + m
    basis = [nvars + i for i in range(m)]
    # reduced costs of the auxiliary objective
    cost = [Fraction(0)] * nvars + [Fraction(1)] * m + [Fraction(0)]
    for i in range(m):
        cost = [c - t for c, t in zip(cost, tab[i])]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # cannot happen: the auxiliary objective is bounded below
            raise RuntimeError("unbounded phase-one problem")
        leave = best[1]
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, tab[leave])]
        basis[leave] = enter

    if -cost[-1] != 0:
        return None
    y = [Fraction(0)] * width
    for i, bv in enumerate(basis):
        y[bv] = tab[i][-1]
    return y[:nvars]


def lp_feasible(eq=None, ge=None, nvars: Optional[int] = None, nonneg: bool = False) -> LPResult:
    """Decide feasibility of ``{A x = b, C x >= d}`` exactly.

    ``eq`` and ``ge`` are ``(matrix, rhs)`` pairs (either may be omitted).
    Variables are free unless ``nonneg`` is set.  On success the returned
    witness satisfies every constraint under exact substitution.
    """
    A, b = eq if eq is not None else ([], [])
    C, d = ge if ge is not None else ([], [])
    A = [vec(r) for r in A]
    C = [vec(r) for r in C]
    b, d = vec(b), vec(d)
    if len(A) != len(b) or len(C) != len(d):
        raise ValueError("constraint rows and right-hand sides differ in length")
    if nvars is None:
        if A:
            nvars = len(A[0])
        elif C:
            nvars = len(C[0])
        else:
            raise ValueError("nvars is required for an empty system")
    for r in A + C:
        if len(r) != nvars:
            raise ValueError("constraint row has wrong length")

    # standard form: x = x+ - x- (unless nonneg), C x - s = d
    ns = len(C)
    zero = Fraction(0)

    def expand(r):
        return list(r) if nonneg else list(r) + [-x for x in r]

    nx = nvars if nonneg else 2 * nvars
    rows, rhs = [], []
    for r, bi in zip(A, b):
        rows.append(expand(r) + [zero] * ns)
        rhs.append(bi)
    for k, (r, di) in enumerate(zip(C, d)):
        rows.append(expand(r) + [Fraction(-int(k == s)) for s in range(ns)])
        rhs.append(di)
    y = _phase_one(rows, rhs, nx + ns)
    if y is None:
        return LPResult(False)
    x = y[:nvars] if nonneg else [p - q for p, q in zip(y[:nvars], y[nvars:nx])]
    return LPResult(True, tuple(x))
