"""Exact Gale duality, positive 2-spanning and condition * for toric
SL_n-embeddings."""

from .condstar import (
    StarReport,
    WeightCollection,
    check_condition_star,
    free_configuration,
    has_open_quasitorus_orbit,
    is_cox_realization,
)
from .gale import PointConfig, VectorConfig, gale_transform
from .lattice import FgAbelianGroup, GroupElement, generates, smith_normal_form
from .linalg import RatMatrix, kernel_basis, lp_feasible, rank, rref
from .spanning import is_positively_2_spanning

__version__ = "0.1.0"

__all__ = [
    "FgAbelianGroup",
    "GroupElement",
    "PointConfig",
    "RatMatrix",
    "StarReport",
    "VectorConfig",
    "WeightCollection",
    "check_condition_star",
    "free_configuration",
    "gale_transform",
    "generates",
    "has_open_quasitorus_orbit",
    "is_cox_realization",
    "is_positively_2_spanning",
    "kernel_basis",
    "lp_feasible",
    "rank",
    "rref",
    "smith_normal_form",
]
