"""Condition * for weight collections over a finitely generated abelian group.

A collection of weights satisfies condition * when

1. their images in ``M/Tor(M) (x) Q`` form a positively 2-spanning
   configuration, and
2. deleting any single copy of any weight leaves a generating set of the
   whole group.

A linear quasitorus action on affine space with these coordinate weights
is then the Cox realization of an affine toric variety.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .gale import VectorConfig
from .lattice import FgAbelianGroup, GroupElement, free_image, generates
from .linalg import RatMatrix, rank
from .spanning import SpanningVerdict, is_positively_2_spanning


@dataclass(frozen=True)
class WeightCollection:
    group: FgAbelianGroup
    weights: tuple  # of (GroupElement, multiplicity)

    def __init__(self, group: FgAbelianGroup, weights: Iterable):
        items = []
        for item in weights:
            e, mult = (item, 1) if isinstance(item, GroupElement) else item
            group.check(e)
            if int(mult) < 1:
                raise ValueError("multiplicities must be positive")
            items.append((e, int(mult)))
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "weights", tuple(items))

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.weights)

    def expanded(self) -> list:
        return [e for e, m in self.weights for _ in range(m)]

    def distinct(self) -> list:
        """``(first index, element, total multiplicity)`` per distinct element."""
        seen = {}
        for i, (e, m) in enumerate(self.weights):
            if e in seen:
                seen[e][2] += m
            else:
                seen[e] = [i, e, m]
        return [tuple(v) for v in seen.values()]


@dataclass(frozen=True)
class GenerationCheck:
    index: int  # first position of the deleted weight in the collection
    element: GroupElement
    generates: bool


@dataclass(frozen=True)
class StarReport:
    holds: bool
    spanning: SpanningVerdict
    generation: tuple = field(default=())
    reason: Optional[str] = None

    def __bool__(self):
        return self.holds

    @property
    def generation_failures(self) -> list:
        return [c for c in self.generation if not c.generates]


def free_configuration(w: WeightCollection) -> VectorConfig:
    g = w.group
    return VectorConfig([free_image(g, e) for e in w.expanded()], g.free_rank)


def check_condition_star(w: WeightCollection) -> StarReport:
    spanning = is_positively_2_spanning(free_configuration(w))
    distinct = w.distinct()
    checks = []
    for k, (index, e, mult) in enumerate(distinct):
        rest = [x for j, (_, x, _) in enumerate(distinct) if j != k]
        if mult >= 2:
            rest.append(e)
        checks.append(GenerationCheck(index, e, generates(w.group, rest)))
    # with nothing to delete, the collection itself must generate
    generated = all(c.generates for c in checks) if checks else generates(w.group, [])
    holds = spanning.holds and generated
    reason = None
    if not spanning.holds:
        wit = spanning.witness
        reason = "not positively 2-spanning: deleting copy %s leaves all weights in {h >= 0}, h = %s" % (
            wit.index,
            "(" + ",".join(str(x) for x in wit.h) + ")",
        )
    elif not checks and not holds:
        reason = "the empty collection does not generate %s" % w.group
    elif not holds:
        bad = next(c for c in checks if not c.generates)
        reason = "deleting %s (position %d) leaves a proper subgroup" % (bad.element, bad.index)
    return StarReport(holds, spanning, tuple(checks), reason)


def is_cox_realization(w: WeightCollection) -> bool:
    return check_condition_star(w).holds


def has_open_quasitorus_orbit(group: FgAbelianGroup, theta_weights: Sequence[GroupElement]) -> bool:
    """Open orbit of the diagonal quasitorus action on the span of the
    invariants: their weights must be linearly independent over Q."""
    if not theta_weights:
        return True
    rows = [free_image(group, e) for e in theta_weights]
    return rank(RatMatrix(rows, ncols=group.free_rank)) == len(rows)
