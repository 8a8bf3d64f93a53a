"""Optimal locally repairable codes over finite fields: constructions, exact verification, bounds and local repair."""

from .bounds import (
    BoundReport,
    bound_report,
    disjoint_condition,
    distance_upper_bound,
    hamming_bound_holds,
    length_upper_bound,
    nondiv_redundancy_bound,
    optimal_redundancy,
    singleton_type_bound,
)
from .codes import (
    CodeProfile,
    LinearCode,
    Optimality,
    RecoverySet,
    classify_optimality,
    is_recovery_set,
    is_recovery_set_direct,
    locality,
    min_distance,
    minimal_recovery_sets,
)
from .construct import (
    ConstructionConfig,
    GreedyTrace,
    construct_greedy,
    construct_vandermonde,
    eta_guarantee,
    shorten,
)
from .field import GF, make_field
from .linalg import Matrix, in_span, rank, right_kernel, rref, solve
from .recovery import RecoveryPlan, disjointify, erasure_sim, greedy_cover, repair

__all__ = [name for name in dir() if not name.startswith("_")]
