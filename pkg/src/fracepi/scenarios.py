"""Batch experiments: baseline dynamics, rate sweeps, and a long grid scan.

The bundled presets are

  * baseline: the default parameter set at derivative orders
    {0.96, 0.98, 1} over 300 days,
  * sigma sweep: isolation rates {1.69e-2, 3.19e-2, 5.69e-2} crossed
    with the three orders,
  * p sweep: residual susceptibilities {0.20, 0.30, 0.40} crossed with
    the three orders,
  * contour: a 25x25 log-spaced (sigma, theta) grid integrated to 1000
    days at order 1, recording final infected and recovered densities.

Cells of sweeps and grids are independent; run_contour optionally
executes them in worker processes, assembling results by cell index so
parallel and sequential runs produce identical output.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from fracepi.errors import FracepiError
from fracepi.fractional import FractionalOrder, GridFunction, SolverConfig, solve_caputo_ivp
from fracepi.model import ModelParams, StateVector, default_initial_state, make_rhs

DEFAULT_STEP = 0.05    # days
DEFAULT_HORIZON = 300.0
CONTOUR_HORIZON = 1000.0

BASELINE_ALPHAS = (0.96, 0.98, 1.0)
SIGMA_SWEEP_VALUES = (1.69e-2, 3.19e-2, 5.69e-2)
SUSCEPTIBILITY_SWEEP_VALUES = (0.20, 0.30, 0.40)

CONTOUR_AXIS_POINTS = 25
CONTOUR_AXIS_BOUNDS = (1e-3, 1e-1)

INFECTED_THRESHOLD = 100.0

SWEEPABLE = ("sigma", "theta", "p", "alpha")


def default_solver_config(step_size: float = DEFAULT_STEP, t_end: float = DEFAULT_HORIZON) -> SolverConfig:
    return SolverConfig(step_size=step_size, t_end=t_end)


def contour_solver_config(step_size: float = DEFAULT_STEP) -> SolverConfig:
    return SolverConfig(step_size=step_size, t_end=CONTOUR_HORIZON)


def default_contour_axis() -> np.ndarray:
    low, high = CONTOUR_AXIS_BOUNDS
    return np.logspace(math.log10(low), math.log10(high), CONTOUR_AXIS_POINTS)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """One labeled model run on a uniform grid."""

    grid: GridFunction
    params: ModelParams
    config: SolverConfig
    label: str

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("trajectory label must be nonempty")
        if len(self.grid) != self.config.n_steps + 1:
            raise ValueError(
                f"grid has {len(self.grid)} points, expected {self.config.n_steps + 1}"
            )

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    @property
    def S(self) -> np.ndarray:
        return self.grid.values[:, 0]

    @property
    def I(self) -> np.ndarray:
        return self.grid.values[:, 1]

    @property
    def Q(self) -> np.ndarray:
        return self.grid.values[:, 2]

    @property
    def R(self) -> np.ndarray:
        return self.grid.values[:, 3]

    @property
    def final_state(self) -> StateVector:
        return StateVector.from_array(self.grid.final_value)


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep description."""

    varying: str
    values: tuple[float, ...]
    base: ModelParams
    horizon: SolverConfig

    def __post_init__(self) -> None:
        if self.varying not in SWEEPABLE:
            raise ValueError(f"cannot sweep {self.varying!r}; choose one of {SWEEPABLE}")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ValueError("sweep needs at least one value")
        for value in self.values:  # range check via the params constructor
            _with_value(self.base, self.varying, value)


def _with_value(base: ModelParams, name: str, value: float) -> ModelParams:
    if name == "alpha":
        return replace(base, alpha=FractionalOrder(value))
    return replace(base, **{name: value})


def simulate(
    params: ModelParams,
    initial_state: StateVector | None = None,
    config: SolverConfig | None = None,
    label: str = "run",
) -> Trajectory:
    """Integrate one parameter set and wrap the result."""
    if initial_state is None:
        initial_state = default_initial_state()
    if config is None:
        config = default_solver_config()
    grid = solve_caputo_ivp(make_rhs(params), initial_state.as_array(), params.alpha, config)
    return Trajectory(grid=grid, params=params, config=config, label=label)


def run_sweep(spec: SweepSpec, initial_state: StateVector | None = None) -> list[Trajectory]:
    """Run one trajectory per sweep value, labeled 'name=value [alpha=a]'."""
    trajectories = []
    for value in spec.values:
        params = _with_value(spec.base, spec.varying, value)
        label = f"{spec.varying}={value:g}"
        if spec.varying != "alpha":
            label += f" alpha={params.alpha.alpha:g}"
        trajectories.append(simulate(params, initial_state, spec.horizon, label))
    return trajectories


def run_baseline(
    alphas=BASELINE_ALPHAS,
    params: ModelParams | None = None,
    config: SolverConfig | None = None,
    initial_state: StateVector | None = None,
) -> list[Trajectory]:
    """Default-parameter dynamics at each requested derivative order."""
    base = params if params is not None else ModelParams()
    horizon = config if config is not None else default_solver_config()
    spec = SweepSpec(varying="alpha", values=tuple(alphas), base=base, horizon=horizon)
    return run_sweep(spec, initial_state)


def run_sigma_sweep(
    params: ModelParams | None = None,
    config: SolverConfig | None = None,
    initial_state: StateVector | None = None,
) -> list[Trajectory]:
    """Isolation-rate grid: alpha outer, sigma inner; 9 trajectories."""
    base = params if params is not None else ModelParams()
    horizon = config if config is not None else default_solver_config()
    trajectories = []
    for alpha in BASELINE_ALPHAS:
        spec = SweepSpec(
            varying="sigma",
            values=SIGMA_SWEEP_VALUES,
            base=_with_value(base, "alpha", alpha),
            horizon=horizon,
        )
        trajectories.extend(run_sweep(spec, initial_state))
    return trajectories


def run_reinfection_sweep(
    params: ModelParams | None = None,
    config: SolverConfig | None = None,
    initial_state: StateVector | None = None,
) -> list[Trajectory]:
    """Residual-susceptibility grid: alpha outer, p inner; 9 trajectories."""
    base = params if params is not None else ModelParams()
    horizon = config if config is not None else default_solver_config()
    trajectories = []
    for alpha in BASELINE_ALPHAS:
        spec = SweepSpec(
            varying="p",
            values=SUSCEPTIBILITY_SWEEP_VALUES,
            base=_with_value(base, "alpha", alpha),
            horizon=horizon,
        )
        trajectories.extend(run_sweep(spec, initial_state))
    return trajectories


@dataclass(frozen=True, eq=False)
class GridResult:
    """Final infected/recovered densities over a (sigma, theta) grid.

    Matrices are indexed [sigma, theta].
    """

    sigma_values: np.ndarray
    theta_values: np.ndarray
    infected_at_end: np.ndarray
    recovered_at_end: np.ndarray

    def __post_init__(self) -> None:
        shape = (len(self.sigma_values), len(self.theta_values))
        if self.infected_at_end.shape != shape or self.recovered_at_end.shape != shape:
            raise ValueError(f"grid matrices must have shape {shape}")


def _contour_cell(task):
    index, params, initial_state, config = task
    traj = simulate(params, initial_state, config, label="cell")
    final = traj.final_state
    return index, final.I, final.R


def run_contour(
    sigma_axis=None,
    theta_axis=None,
    params: ModelParams | None = None,
    config: SolverConfig | None = None,
    initial_state: StateVector | None = None,
    workers: int = 1,
) -> GridResult:
    """Long-horizon scan over isolation and recovery rates.

    Defaults: 25 log-spaced values in [1e-3, 1e-1] on both axes, the
    default parameter set at order 1, 1000-day horizon.  A failing cell
    aborts the scan with its (sigma, theta) pair in the error message.
    """
    sigma_axis = np.asarray(default_contour_axis() if sigma_axis is None else sigma_axis, dtype=float)
    theta_axis = np.asarray(default_contour_axis() if theta_axis is None else theta_axis, dtype=float)
    if sigma_axis.size == 0 or theta_axis.size == 0:
        raise ValueError("contour axes must be nonempty")
    if (sigma_axis <= 0).any() or (theta_axis <= 0).any():
        raise ValueError("contour axes must be positive")
    base = params if params is not None else ModelParams()
    horizon = config if config is not None else contour_solver_config()

    tasks = []
    for i, sigma in enumerate(sigma_axis):
        for j, theta in enumerate(theta_axis):
            cell_params = replace(base, sigma=float(sigma), theta=float(theta))
            tasks.append(((i, j), cell_params, initial_state, horizon))

    infected = np.empty((sigma_axis.size, theta_axis.size))
    recovered = np.empty_like(infected)

    def fill(result) -> None:
        (i, j), final_i, final_r = result
        infected[i, j] = final_i
        recovered[i, j] = final_r

    if workers <= 1:
        for task in tasks:
            fill(_run_cell_checked(task))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for result in pool.map(_run_cell_checked, tasks, chunksize=8):
                fill(result)

    return GridResult(
        sigma_values=sigma_axis,
        theta_values=theta_axis,
        infected_at_end=infected,
        recovered_at_end=recovered,
    )


def _run_cell_checked(task):
    (i, j), cell_params, initial_state, horizon = task
    try:
        return _contour_cell(task)
    except FracepiError as exc:
        raise type(exc)(
            f"grid cell (sigma={cell_params.sigma:.6g}, theta={cell_params.theta:.6g}) failed: {exc}"
        ) from exc


@dataclass(frozen=True)
class SummaryRecord:
    """Headline numbers of one trajectory.

    t_below_threshold is the first grid time with infected < threshold,
    or None if that never happens.
    """

    label: str
    peak_infected: float
    t_peak: float
    final_state: StateVector
    threshold: float
    t_below_threshold: float | None


def summarize(trajectory: Trajectory, threshold: float = INFECTED_THRESHOLD) -> SummaryRecord:
    """Peak infected, its time, the final state, and threshold crossing."""
    infected = trajectory.I
    peak_index = int(np.argmax(infected))  # first occurrence on ties
    below = np.nonzero(infected < threshold)[0]
    return SummaryRecord(
        label=trajectory.label,
        peak_infected=float(infected[peak_index]),
        t_peak=float(trajectory.times[peak_index]),
        final_state=trajectory.final_state,
        threshold=float(threshold),
        t_below_threshold=float(trajectory.times[below[0]]) if below.size else None,
    )
