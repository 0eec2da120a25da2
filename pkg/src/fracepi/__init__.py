"""Fractional-order SIQR epidemic dynamics toolkit.

Core pieces:
  * fractional: Caputo initial value problems (Adams-Bashforth-Moulton
    PECE on uniform grids), Mittag-Leffler series, convergence estimator
  * model: SIQR-with-reinfection parameters and vector field
  * analysis: disease-free equilibrium, reproduction number, stability,
    sensitivity indices
  * scenarios: baseline runs, parameter sweeps, grid scans, summaries
  * cli: the `fracepi` command-line entry point
"""

from fracepi.analysis import (
    SensitivityReport,
    StabilityReport,
    classify_dfe,
    dfe_eigenvalues,
    disease_free_equilibrium,
    r0_closed_form,
    r0_ngm,
    sensitivity_indices,
)
from fracepi.fractional import (
    FractionalOrder,
    GridFunction,
    SolverConfig,
    convergence_order,
    mittag_leffler,
    predictor_weights,
    solve_caputo_ivp,
)
from fracepi.model import (
    EffectiveRates,
    ModelParams,
    StateVector,
    default_initial_state,
    effective_rate,
    effective_rates,
    make_rhs,
    siqr_rhs,
)
from fracepi.scenarios import (
    GridResult,
    SummaryRecord,
    SweepSpec,
    Trajectory,
    run_baseline,
    run_contour,
    run_reinfection_sweep,
    run_sigma_sweep,
    run_sweep,
    simulate,
    summarize,
)

__version__ = "0.1.0"

__all__ = [
    "FractionalOrder",
    "GridFunction",
    "SolverConfig",
    "convergence_order",
    "mittag_leffler",
    "predictor_weights",
    "solve_caputo_ivp",
    "EffectiveRates",
    "ModelParams",
    "StateVector",
    "default_initial_state",
    "effective_rate",
    "effective_rates",
    "make_rhs",
    "siqr_rhs",
    "SensitivityReport",
    "StabilityReport",
    "classify_dfe",
    "dfe_eigenvalues",
    "disease_free_equilibrium",
    "r0_closed_form",
    "r0_ngm",
    "sensitivity_indices",
    "GridResult",
    "SummaryRecord",
    "SweepSpec",
    "Trajectory",
    "run_baseline",
    "run_contour",
    "run_reinfection_sweep",
    "run_sigma_sweep",
    "run_sweep",
    "simulate",
    "summarize",
    "__version__",
]
