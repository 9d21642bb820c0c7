"""Integer normal forms and finitely generated abelian groups.

Integer matrices are lists of lists of Python ints.  A group
``Z^d + Z/q_1 + ... + Z/q_t`` is an :class:`FgAbelianGroup` with the torsion
coefficients kept as an invariant-factor chain ``q_1 | q_2 | ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .linalg import RatMatrix, solve


class DimensionError(ValueError):
    pass


def _copy(a: Sequence[Sequence[int]]) -> list:
    return [[int(x) for x in r] for r in a]


def _identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _ncols(a, ncols):
    if ncols is not None:
        return ncols
    return len(a[0]) if a else 0


def matmul(a, b, inner: int | None = None) -> list:
    """Integer matrix product; ``inner`` is needed when ``a`` has no rows."""
    if not a:
        return []
    k = len(a[0])
    if len(b) != k:
        raise DimensionError("shape mismatch in matmul")
    ncols = len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(ncols)] for i in range(len(a))]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant (fraction-free Bareiss elimination)."""
    m = _copy(a)
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class SmithDecomposition(NamedTuple):
    D: list
    U: list
    V: list

    @property
    def diagonal(self) -> list:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.V)))]


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None) -> SmithDecomposition:
    """Return ``(D, U, V)`` with ``U a V = D`` and ``U``, ``V`` unimodular.

    The diagonal of ``D`` is nonnegative and each entry divides the next.
    """
    A = _copy(a)
    m, n = len(A), _ncols(a, ncols)
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for r in A:
            r[dst] += f * r[src]
        for r in V:
            r[dst] += f * r[src]

    for t in range(min(m, n)):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            rest = [(abs(A[i][t]), i, 0) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), 0, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, i, j = min(rest)
                if i:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(A, U, V)


def invariant_factors(a, ncols: int | None = None) -> list:
    """Nonzero diagonal entries of the Smith form."""
    return [x for x in smith_normal_form(a, ncols).diagonal if x]


def hermite_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None) -> tuple:
    """Column-style Hermite form: ``(H, U)`` with ``H = a U``, ``U`` unimodular.

    ``H`` is in column echelon form with positive pivots; in a pivot row
    the entries left of the pivot lie in ``[0, pivot)``.  Zero columns come
    last.
    """
    H = _copy(a)
    m, n = len(H), _ncols(a, ncols)
    U = _identity(n)

    def swap(i, j):
        for M in (H, U):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add(dst, src, f):
        for M in (H, U):
            for r in M:
                r[dst] += f * r[src]

    k = 0
    for i in range(m):
        if k == n:
            break
        while True:
            nz = [(abs(H[i][j]), j) for j in range(k, n) if H[i][j]]
            if not nz:
                break
            _, j = min(nz)
            swap(k, j)
            done = True
            for j in range(k + 1, n):
                if H[i][j]:
                    add(j, k, -(H[i][j] // H[i][k]))
                    if H[i][j]:
                        done = False
            if done:
                break
        if H[i][k] == 0:
            continue
        if H[i][k] < 0:
            for M in (H, U):
                for r in M:
                    r[k] = -r[k]
        for j in range(k):
            if H[i][j] < 0 or H[i][j] >= H[i][k]:
                add(j, k, -(H[i][j] // H[i][k]))
        k += 1
    return H, U


# ---------------------------------------------------------------------------
# Finitely generated abelian groups


@dataclass(frozen=True)
class GroupElement:
    free: tuple
    torsion: tuple = ()

    def __add__(self, other: "GroupElement") -> "GroupElement":
        # residues are not reduced here; use FgAbelianGroup.add
        return GroupElement(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
        )

    def __str__(self):
        f = ",".join(str(x) for x in self.free)
        if not self.torsion:
            return "(%s)" % f
        return "(%s|%s)" % (f, ",".join(str(x) for x in self.torsion))


@dataclass(frozen=True)
class FgAbelianGroup:
    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(q) for q in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for i, q in enumerate(self.torsion):
            if q < 2:
                raise ValueError("torsion coefficients must be >= 2, got %d" % q)
            if i and q % self.torsion[i - 1]:
                raise ValueError("torsion %s is not a divisibility chain" % (self.torsion,))

    @classmethod
    def free(cls, d: int) -> "FgAbelianGroup":
        return cls(d, ())

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    def element(self, free: Iterable[int] = (), torsion: Iterable[int] = ()) -> GroupElement:
        """Build an element, reducing the torsion residues."""
        free, torsion = tuple(int(x) for x in free), tuple(int(x) for x in torsion)
        if len(free) != self.free_rank or len(torsion) != len(self.torsion):
            raise DimensionError(
                "element shape (%d|%d) does not match group (%d|%d)"
                % (len(free), len(torsion), self.free_rank, len(self.torsion))
            )
        return GroupElement(free, tuple(r % q for r, q in zip(torsion, self.torsion)))

    def zero(self) -> GroupElement:
        return GroupElement((0,) * self.free_rank, (0,) * len(self.torsion))

    def check(self, e: GroupElement) -> None:
        if len(e.free) != self.free_rank or len(e.torsion) != len(self.torsion):
            raise DimensionError("element %s does not belong to %s" % (e, self))
        for r, q in zip(e.torsion, self.torsion):
            if not 0 <= r < q:
                raise ValueError("residue %d is not reduced modulo %d" % (r, q))

    def add(self, *elems: GroupElement) -> GroupElement:
        total = self.zero()
        for e in elems:
            self.check(e)
            total = total + e
        return self.element(total.free, total.torsion)

    def scale(self, e: GroupElement, k: int) -> GroupElement:
        return self.element([k * x for x in e.free], [k * x for x in e.torsion])

    def neg(self, e: GroupElement) -> GroupElement:
        return self.scale(e, -1)

    def __str__(self):
        parts = ["Z^%d" % self.free_rank] if self.free_rank else []
        parts += ["Z/%d" % q for q in self.torsion]
        return " + ".join(parts) or "0"


def canonical_group(free_rank: int, moduli: Sequence[int]) -> tuple:
    """Canonicalize ``Z^d + Z/m_1 + ...`` for arbitrary moduli ``m_i >= 1``.

    Returns ``(group, convert)`` where ``convert(free, residues)`` maps an
    element given in the original presentation to a :class:`GroupElement`
    of the canonical group.
    """
    moduli = [int(m) for m in moduli]
    if any(m < 1 for m in moduli):
        raise ValueError("moduli must be positive")
    t = len(moduli)
    snf = smith_normal_form([[moduli[i] if i == j else 0 for j in range(t)] for i in range(t)], t)
    diag = snf.diagonal
    keep = [i for i, q in enumerate(diag) if q > 1]
    group = FgAbelianGroup(free_rank, tuple(diag[i] for i in keep))

    def convert(free, residues):
        residues = [int(x) for x in residues]
        if len(residues) != t:
            raise DimensionError("expected %d residues" % t)
        image = [sum(snf.U[i][k] * residues[k] for k in range(t)) for i in range(t)]
        return group.element(free, [image[i] for i in keep])

    return group, convert


def free_image(group: FgAbelianGroup, e: GroupElement) -> tuple:
    """Image in ``M/Tor(M)`` tensored with Q, as a tuple of fractions."""
    group.check(e)
    return tuple(Fraction(x) for x in e.free)


def lift(group: FgAbelianGroup, e: GroupElement) -> list:
    group.check(e)
    return list(e.free) + list(e.torsion)


def generates(group: FgAbelianGroup, elems: Sequence[GroupElement]) -> bool:
    """True iff ``elems`` generate the whole group.

    Elements are lifted to columns of ``Z^(d+t)``, relation columns
    ``q_i e_(d+i)`` are appended, and the cokernel of the resulting matrix
    is trivial exactly when the Smith form has full rank with unit
    invariant factors.
    """
    n = group.ngens
    if n == 0:
        for e in elems:
            group.check(e)
        return True
    cols = [lift(group, e) for e in elems]
    d = group.free_rank
    for i, q in enumerate(group.torsion):
        c = [0] * n
        c[d + i] = q
        cols.append(c)
    if len(cols) < n:
        return False
    mat = [[c[i] for c in cols] for i in range(n)]
    diag = smith_normal_form(mat, len(cols)).diagonal
    return len(diag) == n and all(x == 1 for x in diag)


def lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> list:
    """Basis (as a list of column vectors) of the sublattice of ``Z^dim``
    generated by ``vectors``, read off the column Hermite form."""
    if not vectors:
        return []
    mat = [[v[i] for v in vectors] for i in range(dim)]
    H, _ = hermite_normal_form(mat, len(vectors))
    basis = []
    for j in range(len(vectors)):
        col = [H[i][j] for i in range(dim)]
        if any(col):
            basis.append(col)
    return basis


def lattice_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list:
    """Integer coordinates of ``v`` in a lattice basis (columns)."""
    if not basis:
        if any(v):
            raise ValueError("vector %s is not in the lattice" % (list(v),))
        return []
    x = solve(RatMatrix.from_columns(basis, len(v)), v)
    if x is None or any(c.denominator != 1 for c in x):
        raise ValueError("vector %s is not in the lattice" % (list(v),))
    return [int(c) for c in x]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = _lcm(out, v)
    return out
