"""Ordered function space: symbolic catalog, witnesses, refutation grids and growth evidence."""

from cadist.growth.functions import (
    CATALOG,
    GroundTruth,
    Kind,
    SymbolicFunction,
    incomparable_step,
    normalize_affine,
    parse_function,
)
from cadist.growth.order import (
    Comparability,
    GridReport,
    OrderWitness,
    PreceqReport,
    affine_witnesses,
    check_preceq,
    compare_both,
    compare_with_constant,
    compose_witnesses,
    default_range,
    refute_preceq_grid,
    verify_preceq,
)
from cadist.growth.superpoly import (
    StrongReport,
    SuperquadraticReport,
    strongly_superpoly_check,
    superpoly_samples,
    superquadratic_check,
)

__all__ = [
    "CATALOG",
    "Comparability",
    "GridReport",
    "GroundTruth",
    "Kind",
    "OrderWitness",
    "PreceqReport",
    "StrongReport",
    "SuperquadraticReport",
    "SymbolicFunction",
    "affine_witnesses",
    "check_preceq",
    "compare_both",
    "compare_with_constant",
    "compose_witnesses",
    "default_range",
    "incomparable_step",
    "normalize_affine",
    "parse_function",
    "refute_preceq_grid",
    "strongly_superpoly_check",
    "superpoly_samples",
    "superquadratic_check",
    "verify_preceq",
]
