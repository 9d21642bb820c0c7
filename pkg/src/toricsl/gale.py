"""Point and vector configurations and the Gale transform.

Configurations are ordered collections: repeated members are separate
copies, and removing a member always goes by index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import RatMatrix, kernel_basis, lp_feasible, rank, row_basis, vec


class ConfigurationError(ValueError):
    pass


class ConfigurationTooSmall(ConfigurationError):
    pass


class DegenerateConfiguration(ConfigurationError):
    pass


@dataclass(frozen=True)
class VectorConfig:
    dim: int
    vectors: tuple

    def __init__(self, vectors: Iterable[Sequence], dim: int | None = None):
        vectors = tuple(vec(v) for v in vectors)
        if dim is None:
            if not vectors:
                raise ValueError("dim is required for an empty configuration")
            dim = len(vectors[0])
        for v in vectors:
            if len(v) != dim:
                raise ValueError("vector %s does not have dimension %d" % (v, dim))
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "dim", dim)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    def matrix(self) -> RatMatrix:
        """The ``dim x n`` matrix with the vectors as columns."""
        return RatMatrix.from_columns(self.vectors, self.dim)

    def delete(self, index: int) -> "VectorConfig":
        return VectorConfig(self.vectors[:index] + self.vectors[index + 1 :], self.dim)

    def total(self) -> tuple:
        return tuple(sum((v[k] for v in self.vectors), Fraction(0)) for k in range(self.dim))

    def spans(self) -> bool:
        return rank(self.matrix()) == self.dim


@dataclass(frozen=True)
class PointConfig:
    dim: int
    points: tuple

    def __init__(self, points: Iterable[Sequence], dim: int | None = None):
        points = tuple(vec(p) for p in points)
        if dim is None:
            if not points:
                raise ValueError("dim is required for an empty configuration")
            dim = len(points[0])
        for p in points:
            if len(p) != dim:
                raise ValueError("point %s does not have dimension %d" % (p, dim))
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "dim", dim)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def homogenized(self) -> RatMatrix:
        """Coordinates as columns with a row of ones appended."""
        rows = [[p[k] for p in self.points] for k in range(self.dim)]
        rows.append([1] * len(self.points))
        return RatMatrix(rows, ncols=len(self.points))

    def validate(self) -> None:
        n, d = len(self.points), self.dim
        if n < d + 2:
            raise ConfigurationTooSmall(
                "a configuration of %d points in Q^%d needs n >= d+2 = %d points" % (n, d, d + 2)
            )
        if rank(self.homogenized()) != d + 1:
            raise DegenerateConfiguration("points lie in a proper affine subspace of Q^%d" % d)


def gale_transform(a: PointConfig) -> VectorConfig:
    """Gale transform with the canonical (RREF) choice of kernel basis.

    The result has ``n`` vectors in ``Q^(n-d-1)`` summing to zero.
    """
    a.validate()
    b = kernel_basis(a.homogenized())
    return VectorConfig(b.columns(), b.nrows)


def aff_dep(a: PointConfig) -> RatMatrix:
    a.validate()
    return kernel_basis(a.homogenized())


def aff_val(a: PointConfig) -> RatMatrix:
    a.validate()
    return row_basis(a.homogenized())


def lin_dep(g: VectorConfig) -> RatMatrix:
    return kernel_basis(g.matrix())


def lin_val(g: VectorConfig) -> RatMatrix:
    if g.dim == 0:
        return RatMatrix([], ncols=len(g))
    return row_basis(g.matrix())


def gale_dual_points(g: VectorConfig) -> PointConfig:
    """A point configuration whose Gale transform is linearly equivalent to ``g``.

    Runs the transform backwards: the affine values of the sought points
    are the linear dependences of ``g``.  ``g`` must have zero sum.
    """
    if any(g.total()):
        raise ConfigurationError("the configuration does not have zero sum")
    n = len(g)
    deps = lin_dep(g)
    ones = RatMatrix([[1] * n], ncols=n)
    chosen = ones
    coords = []
    for row in deps:
        trial = chosen.vstack(RatMatrix([row], ncols=n))
        if rank(trial) > chosen.nrows:
            chosen = trial
            coords.append(row)
    d = len(coords)
    return PointConfig([[c[i] for c in coords] for i in range(n)], d)


def is_general_position(a: PointConfig) -> bool:
    """No ``d+1`` of the points lie on a common affine hyperplane."""
    a.validate()
    h = a.homogenized()
    d = a.dim
    return all(rank(h.select_columns(s)) == d + 1 for s in combinations(range(len(a)), d + 1))


def is_general_position_dual(a: PointConfig) -> bool:
    """Same predicate, decided on the Gale side: every ``n-d-1`` vectors form a basis."""
    g = gale_transform(a)
    m = g.matrix()
    return all(rank(m.select_columns(s)) == g.dim for s in combinations(range(len(g)), g.dim))


def lie_in_common_face(a: PointConfig, indices: Iterable[int]) -> bool:
    """Whether the points with the given (0-based) indices lie in one face
    of ``conv(a)``, decided by ``0 in conv{g_j : j not in indices}``."""
    g = gale_transform(a)
    idx = set(indices)
    for i in idx:
        if not 0 <= i < len(a):
            raise IndexError("point index %d out of range" % i)
    rest = [g[j] for j in range(len(g)) if j not in idx]
    if not rest:
        return False
    eq_rows = [[v[k] for v in rest] for k in range(g.dim)] + [[1] * len(rest)]
    rhs = [0] * g.dim + [1]
    return lp_feasible(eq=(eq_rows, rhs), nvars=len(rest), nonneg=True).feasible
