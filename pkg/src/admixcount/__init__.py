"""Exact and asymptotic enumeration of constrained admixed arrays.

An admixed array is a pair [A, X] of N x 2P binary matrices.  This package
counts such pairs under row-tally and paired-column dosage constraints,
exactly (big-integer dynamic programming) and asymptotically (saddle-point
expansion), and evaluates entropy-based decision criteria.
"""

from .margins import (
    AdmixedArray,
    Dims,
    MarginError,
    MarginSpec,
    NormalizedMargins,
    array_statistics,
    load_spec,
    make_spec,
    spec_of_array,
    normalize,
    semiregular,
    validate,
)
from .bincount import BigCount, conjugate, count_binary_matrices, gale_ryser_feasible
from .enumeration import (
    brute_force_count,
    count_a1,
    count_a12,
    count_a2,
    count_a2_via_feasible,
    enumerate_feasible,
    feasible_set_size,
)
from .criteria import (
    CriterionReport,
    EntropySummary,
    entropy_summary,
    error_fraction_bound,
    estimate_volume_fraction,
    exact_criterion,
    grid_heatmap,
    semiregular_grid_agreement,
    shannon_entropy,
    theta,
)
from .asymptotics import (
    Table2Row,
    alpha12_upper_bound,
    correction_log,
    independence_log_product,
    log2_binom,
    spa_alpha12,
    stirling_central_log,
    table2,
    verify_lemmas,
)

__all__ = [
    "AdmixedArray",
    "BigCount",
    "CriterionReport",
    "Dims",
    "EntropySummary",
    "MarginError",
    "MarginSpec",
    "NormalizedMargins",
    "Table2Row",
    "alpha12_upper_bound",
    "array_statistics",
    "brute_force_count",
    "conjugate",
    "correction_log",
    "count_a1",
    "count_a12",
    "count_a2",
    "count_a2_via_feasible",
    "count_binary_matrices",
    "entropy_summary",
    "enumerate_feasible",
    "error_fraction_bound",
    "estimate_volume_fraction",
    "exact_criterion",
    "feasible_set_size",
    "gale_ryser_feasible",
    "independence_log_product",
    "grid_heatmap",
    "load_spec",
    "log2_binom",
    "make_spec",
    "normalize",
    "semiregular",
    "semiregular_grid_agreement",
    "shannon_entropy",
    "spa_alpha12",
    "spec_of_array",
    "stirling_central_log",
    "table2",
    "theta",
    "validate",
    "verify_lemmas",
]
