"""Equitable optimal transport solvers.

Thin package wrapper around the compiled module: exact LP ground truth,
entropic PAM/APGA solvers, and the derived metrics (Dudley, Holder IPM,
harmonic bound).
"""

from ._eot import (
    BoundReport,
    EotError,
    EotExactResult,
    SolveReport,
    TraceRow,
    apga_solve,
    build_cost_matrix,
    dudley,
    dudley_ipm_exact,
    eot_exact,
    gen_sequential_scenario,
    harmonic_upper_bound,
    holder_ipm,
    lambda_star_closed_form,
    normalize_weights,
    ot_exact,
    pam_solve,
    recover_primal,
    relative_error,
    round_to_feasible,
    simplex_project,
    sinkhorn_baseline,
    utilitarian_exact,
)
from ._eot import __version__

__all__ = [
    "BoundReport",
    "EotError",
    "EotExactResult",
    "SolveReport",
    "TraceRow",
    "apga_solve",
    "build_cost_matrix",
    "dudley",
    "dudley_ipm_exact",
    "eot_exact",
    "gen_sequential_scenario",
    "harmonic_upper_bound",
    "holder_ipm",
    "lambda_star_closed_form",
    "normalize_weights",
    "ot_exact",
    "pam_solve",
    "recover_primal",
    "relative_error",
    "round_to_feasible",
    "simplex_project",
    "sinkhorn_baseline",
    "utilitarian_exact",
    "__version__",
]
