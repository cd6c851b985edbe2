"""Stabilized explicit time integrators built on Chebyshev recurrences.

Single-rate Runge-Kutta-Chebyshev schemes of orders 1 and 2, an additive
multirate variant that pairs two such schemes through linear interpolation
of stage values, and an analysis harness (stability-domain scans, a coupled
2x2 model problem, and a locally refined heat-equation benchmark).
"""

from rkcheb.chebyshev import (
    ChebEval,
    RkcCoefficients,
    build_coefficients,
    cheb_eval,
    select_stage_count,
)
from rkcheb.rkc import (
    OdeProblem,
    StabilityViolationError,
    StepRecord,
    integrate,
    rkc_step,
)
from rkcheb.arkc import (
    ArkcStepRecord,
    ArkcStepState,
    InterlacingError,
    SplitOde,
    arkc_integrate,
    arkc_step,
    arkc_step_fixed,
    interp_fast,
    interp_slow,
    run_interlaced_step,
)
from rkcheb.stability import (
    ModelProblem,
    RkcDomainGrid,
    StabilityGrid,
    iteration_matrix,
    scan_arkc_domain,
    scan_rkc_domain,
    spectral_radius_2x2,
)
from rkcheb.heatbench import (
    HeatProblem,
    Mesh1D,
    build_heat_problem,
    convergence_study,
    reference_solution,
    spectral_radius_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "ArkcStepRecord",
    "ArkcStepState",
    "ChebEval",
    "HeatProblem",
    "InterlacingError",
    "Mesh1D",
    "ModelProblem",
    "OdeProblem",
    "RkcCoefficients",
    "RkcDomainGrid",
    "SplitOde",
    "StabilityGrid",
    "StabilityViolationError",
    "StepRecord",
    "arkc_integrate",
    "arkc_step",
    "arkc_step_fixed",
    "build_coefficients",
    "build_heat_problem",
    "cheb_eval",
    "convergence_study",
    "integrate",
    "interp_fast",
    "interp_slow",
    "iteration_matrix",
    "reference_solution",
    "rkc_step",
    "run_interlaced_step",
    "scan_arkc_domain",
    "scan_rkc_domain",
    "select_stage_count",
    "spectral_radius_2x2",
    "spectral_radius_bounds",
]
