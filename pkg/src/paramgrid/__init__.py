"""paramgrid: approximation sets for linear multi-parametric optimization.

Turn any exact or alpha-approximate solver for the non-parametric version of
a problem into a ((1 + eps) * alpha)-approximation for its K-parametric
version: solve once per point of a logarithmic parameter grid, then answer
arbitrary parameter queries by lifting them onto the grid.  Ships exact
min s-t-cut, knapsack and independence-system oracles, a brute-force
verification layer, and hard-instance fixtures.
"""

from .engine import (
    ApproximationSet,
    GridApproximator,
    Oracle,
    OracleFamily,
    approximate,
    default_oracle,
    guarantee,
    query,
)
from .errors import (
    DegenerateInstanceError,
    DomainError,
    EpsilonRangeError,
    GridCapError,
    InvalidInstanceError,
    OracleError,
    ParamGridError,
    SnapRangeError,
    TooLargeError,
)
from .grid import GridSpec, floor_log, grid_bounds, grid_points, make_spec, snap
from .model import (
    ExplicitList,
    ProblemInstance,
    Sense,
    SolutionRecord,
    as_fraction,
    augmented_evaluate,
    check_lambda,
    check_weight,
    compute_bounds,
    compute_lambda_min,
    evaluate,
    explicit_instance,
)
from .oracle import (
    ExhaustiveOracle,
    VerificationReport,
    brute_force_optimum,
    brute_force_optimum_weight,
    enumerate_solutions,
    minimum_cover_size,
    pareto_prune,
    sample_parameters,
    sample_parameters_labeled,
    verify_approximation_set,
    verify_on_weights,
)
from .weights import (
    LiftCertificate,
    at_threshold,
    below_threshold,
    in_cone,
    lambda_from_weight,
    lift_once,
    lift_to_cone,
    normalize,
    threshold,
    weight_from_lambda,
)

__version__ = "0.1.0"

__all__ = [
    "ApproximationSet",
    "DegenerateInstanceError",
    "DomainError",
    "EpsilonRangeError",
    "ExhaustiveOracle",
    "ExplicitList",
    "GridApproximator",
    "GridCapError",
    "GridSpec",
    "InvalidInstanceError",
    "LiftCertificate",
    "Oracle",
    "OracleError",
    "OracleFamily",
    "ParamGridError",
    "ProblemInstance",
    "Sense",
    "SnapRangeError",
    "SolutionRecord",
    "TooLargeError",
    "VerificationReport",
    "approximate",
    "as_fraction",
    "at_threshold",
    "augmented_evaluate",
    "below_threshold",
    "brute_force_optimum",
    "brute_force_optimum_weight",
    "check_lambda",
    "check_weight",
    "compute_bounds",
    "compute_lambda_min",
    "default_oracle",
    "enumerate_solutions",
    "evaluate",
    "explicit_instance",
    "floor_log",
    "grid_bounds",
    "grid_points",
    "guarantee",
    "in_cone",
    "lambda_from_weight",
    "lift_once",
    "lift_to_cone",
    "make_spec",
    "minimum_cover_size",
    "normalize",
    "pareto_prune",
    "query",
    "sample_parameters",
    "sample_parameters_labeled",
    "snap",
    "threshold",
    "verify_approximation_set",
    "verify_on_weights",
    "weight_from_lambda",
]
