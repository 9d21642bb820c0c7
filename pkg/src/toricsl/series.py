"""Weight systems for SL_n-embeddings of arbitrary class group rank.

For ``n >= 4`` and ``d >= 1`` the module ``(K^n)^n + K^(d-1)`` is given
torus weights ``v_1..v_n, w_1..w_(d-1)`` in ``Z^d``:

* ``v_1..v_4, w_1..w_(d-1)`` are the Gale transform of a convex polygon
  with ``d+3`` vertices (cleared to integers), ``v_i = 0`` for ``i >= 5``;
* every weight except ``v_1`` is doubled, which breaks the relation
  ``v_1+...+v_4 = -(w_1+...+w_(d-1))`` and makes the determinant weight
  independent of the ``w_j``.

The character group is the lattice generated by the final weights;
weights are stored in coordinates of a Hermite basis of that lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .condstar import WeightCollection, check_condition_star, has_open_quasitorus_orbit
from .gale import PointConfig, gale_transform
from .lattice import FgAbelianGroup, generates, lattice_basis, lattice_coordinates, lcm
from .linalg import RatMatrix, rank
from .sl3 import STANDARD, TRIVIAL
from .spanning import vertices_of_hull_without_repetition


class ParameterError(ValueError):
    pass


def convex_polygon(k: int) -> PointConfig:
    """The points ``(i, i^2)``, ``i = 0..k-1``: in convex and general position."""
    if k < 3:
        raise ParameterError("a polygon needs at least 3 vertices, got %d" % k)
    return PointConfig([(i, i * i) for i in range(k)], 2)


@dataclass(frozen=True)
class SeriesInstance:
    n: int
    d: int
    polygon: PointConfig
    raw_weights: tuple  # v_1..v_4, w_1..w_(d-1), integral, in Z^d
    scaled_weights: tuple  # same order, after doubling all but v_1
    basis: tuple  # columns spanning the lattice generated by scaled_weights
    collection: WeightCollection

    @property
    def v(self) -> tuple:
        """``v'_1..v'_n`` as group elements."""
        g = self.collection.group
        return tuple(self.collection.weights[i][0] for i in range(4)) + (g.zero(),) * (self.n - 4)

    @property
    def w(self) -> tuple:
        k = 4 if self.n == 4 else 5
        return tuple(e for e, _ in self.collection.weights[k:])

    @property
    def summand_tags(self) -> list:
        return [STANDARD] * self.n + [TRIVIAL] * (self.d - 1)


def _integral(vectors) -> list:
    den = lcm(x.denominator for v in vectors for x in v)
    return [tuple(int(x * den) for x in v) for v in vectors]


def construct_series_example(n: int, d: int, scale: bool = True) -> SeriesInstance:
    """Build the weight system for ``SL_n`` with class group rank ``d``.

    ``scale=False`` skips the doubling step (a negative control: the
    determinant weight is then dependent on the ``w_j``).
    """
    if n < 4:
        raise ParameterError("n must be at least 4, got %d" % n)
    if d < 1:
        raise ParameterError("d must be at least 1, got %d" % d)
    polygon = convex_polygon(d + 3)
    raw = _integral(gale_transform(polygon).vectors)
    factor = 2 if scale else 1
    scaled = [raw[0]] + [tuple(factor * x for x in v) for v in raw[1:]]

    basis = lattice_basis(scaled, d)
    if len(basis) != d:
        raise RuntimeError("weights do not span a rank-%d lattice" % d)
    group = FgAbelianGroup.free(d)
    coords = [group.element(lattice_coordinates(basis, v)) for v in scaled]
    weights = [(e, n) for e in coords[:4]]
    if n > 4:
        weights.append((group.zero(), n * (n - 4)))
    weights += [(e, 1) for e in coords[4:]]
    return SeriesInstance(
        n, d, polygon, tuple(raw), tuple(scaled), tuple(tuple(b) for b in basis),
        WeightCollection(group, weights),
    )


def rescale_instance(inst: SeriesInstance, k: int) -> SeriesInstance:
    """Multiply every weight of the collection by a positive integer ``k``."""
    if k < 1:
        raise ParameterError("rescaling factor must be positive")
    g = inst.collection.group
    weights = [(g.scale(e, k), m) for e, m in inst.collection.weights]
    return SeriesInstance(
        inst.n, inst.d, inst.polygon, inst.raw_weights, inst.scaled_weights, inst.basis,
        WeightCollection(g, weights),
    )


def normalize_collection(coll: WeightCollection) -> Optional[WeightCollection]:
    """Re-express a torsion-free collection over the lattice it generates.

    Returns None when the weights do not span a full-rank lattice.
    """
    g = coll.group
    if g.torsion:
        raise ValueError("only free groups are supported")
    vectors = [e.free for e, _ in coll.weights]
    basis = lattice_basis(vectors, g.free_rank)
    if len(basis) != g.free_rank:
        return None
    return WeightCollection(
        g, [(g.element(lattice_coordinates(basis, e.free)), m) for e, m in coll.weights]
    )


@dataclass(frozen=True)
class SeriesReport:
    n: int
    d: int
    condition_star: bool
    open_orbit: bool
    rank_ok: bool
    chi_det: tuple
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.condition_star and self.open_orbit and self.rank_ok


def verify_series(inst: SeriesInstance) -> SeriesReport:
    """Check condition *, the open-orbit condition and the class group rank.

    Condition * is checked over the lattice generated by the weights (the
    character group of the acting torus).  The open-orbit condition asks
    that ``w'_1..w'_(d-1)`` and the determinant weight ``v'_1+...+v'_n``
    are linearly independent.
    """
    coll = inst.collection
    g = coll.group
    normal = normalize_collection(coll)
    rank_ok = g.free_rank == inst.d and normal is not None
    star = check_condition_star(normal) if normal is not None else None
    chi = g.add(*inst.v)
    theta = list(inst.w) + [chi]
    orbit = has_open_quasitorus_orbit(g, theta)
    detail = star.reason if star is not None and star.reason else ""
    return SeriesReport(
        inst.n, inst.d, bool(star and star.holds), orbit, rank_ok, chi.free, detail,
    )


def raw_weights_independent(inst: SeriesInstance) -> bool:
    """``v_1, w_1..w_(d-1)`` of the unscaled Gale weights are linearly independent."""
    picked = [inst.raw_weights[0]] + list(inst.raw_weights[4:])
    return rank(RatMatrix(picked, ncols=inst.d)) == len(picked)


def deletion_keeps_generation(inst: SeriesInstance) -> bool:
    """Deleting any single ``w'_j`` leaves a generating set of the group."""
    coll = normalize_collection(inst.collection)
    if coll is None:
        return False
    items = list(coll.weights)
    k = 4 if inst.n == 4 else 5
    for j in range(k, len(items)):
        rest = [e for i, (e, _) in enumerate(items) if i != j]
        if not generates(coll.group, rest):
            return False
    return True


def polygon_is_convex(inst: SeriesInstance) -> bool:
    return vertices_of_hull_without_repetition(inst.polygon)
