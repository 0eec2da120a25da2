"""Command-line front end: configure a scenario, run it, write artifacts.

Configuration precedence: built-in defaults, then the --config JSON file,
then command-line overrides.  Dotted option names map onto the config
structure (--params.sigma, --solver.step_size, --initial_state.I, ...);
unknown keys are errors, not warnings.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from fracepi.analysis import classify_dfe, sensitivity_indices
from fracepi.errors import (
    BoundaryCase,
    DegenerateErrors,
    FracepiError,
    InvalidOrder,
    NonConvergent,
    NonFiniteState,
    OutOfRange,
    ParseError,
    SingularTransitionMatrix,
    ValidationError,
    ZeroDeathRate,
    ZeroRate,
)
from fracepi.fractional import FractionalOrder, SolverConfig
from fracepi.model import ModelParams, StateVector
from fracepi.output import (
    write_grid_csv,
    write_grid_svg,
    write_json,
    write_summary_csv,
    write_trajectory_csv,
    write_trajectory_svg,
)
from fracepi.scenarios import (
    CONTOUR_HORIZON,
    DEFAULT_HORIZON,
    DEFAULT_STEP,
    run_baseline,
    run_contour,
    run_reinfection_sweep,
    run_sigma_sweep,
    simulate,
    summarize,
)

SCENARIOS = ("simulate", "baseline", "sigma-sweep", "reinfection-sweep", "contour", "analyze")

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_ANALYSIS = 4
EXIT_IO = 5

_EXIT_CODE_BY_ERROR = (
    ((ParseError, ValidationError, InvalidOrder), EXIT_CONFIG),
    ((NonFiniteState, NonConvergent, DegenerateErrors, OutOfRange), EXIT_NUMERIC),
    ((ZeroDeathRate, ZeroRate, SingularTransitionMatrix, BoundaryCase), EXIT_ANALYSIS),
    ((OSError,), EXIT_IO),
)

_PARAM_KEYS = ("lambda", "beta", "sigma", "theta", "mu", "p", "alpha")
_STATE_KEYS = ("S", "I", "Q", "R")
_SOLVER_KEYS = ("step_size", "t_end", "corrector_iterations")

_EPILOG = """\
exit codes:
  0  success
  1  unexpected internal error
  2  configuration error (usage, unparsable config file, invariant violation)
  3  numerical failure (solver blow-up, non-convergent series, degenerate study)
  4  analysis domain error (mu = 0, singular transfer matrix, R0 at the boundary)
  5  output I/O failure
"""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings for one invocation."""

    params: ModelParams
    initial_state: StateVector
    solver: SolverConfig
    scenario: str
    output_dir: Path
    emit_svg: bool

    def __post_init__(self) -> None:
        if self.scenario not in SCENARIOS:
            raise ValidationError(f"unknown scenario {self.scenario!r}; expected one of {SCENARIOS}")

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "output_dir": str(self.output_dir),
            "emit_svg": self.emit_svg,
            "params": {
                "lambda": self.params.lam,
                "beta": self.params.beta,
                "sigma": self.params.sigma,
                "theta": self.params.theta,
                "mu": self.params.mu,
                "p": self.params.p,
                "alpha": self.params.alpha.alpha,
            },
            "initial_state": {
                "S": self.initial_state.S,
                "I": self.initial_state.I,
                "Q": self.initial_state.Q,
                "R": self.initial_state.R,
            },
            "solver": {
                "step_size": self.solver.step_size,
                "t_end": self.solver.t_end,
                "corrector_iterations": self.solver.corrector_iterations,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _default_config_dict(scenario: str) -> dict:
    t_end = CONTOUR_HORIZON if scenario == "contour" else DEFAULT_HORIZON
    return {
        "scenario": scenario,
        "output_dir": "out",
        "emit_svg": False,
        "params": {
            "lambda": ModelParams().lam,
            "beta": ModelParams().beta,
            "sigma": ModelParams().sigma,
            "theta": ModelParams().theta,
            "mu": ModelParams().mu,
            "p": ModelParams().p,
            "alpha": 1.0,
        },
        "initial_state": {"S": 153.0, "I": 138.0, "Q": 68.0, "R": 20.0},
        "solver": {"step_size": DEFAULT_STEP, "t_end": t_end, "corrector_iterations": 1},
    }


_SECTION_KEYS = {
    "params": _PARAM_KEYS,
    "initial_state": _STATE_KEYS,
    "solver": _SOLVER_KEYS,
}


def _merge_file(config: dict, data: dict) -> None:
    if not isinstance(data, dict):
        raise ValidationError("config document must be a JSON object")
    for key, value in data.items():
        if key in ("scenario", "output_dir"):
            if not isinstance(value, str):
                raise ValidationError(f"config key {key!r} must be a string")
            config[key] = value
        elif key == "emit_svg":
            if not isinstance(value, bool):
                raise ValidationError("config key 'emit_svg' must be a boolean")
            config[key] = value
        elif key in _SECTION_KEYS:
            if not isinstance(value, dict):
                raise ValidationError(f"config section {key!r} must be an object")
            for sub, number in value.items():
                if sub not in _SECTION_KEYS[key]:
                    raise ValidationError(f"unknown config key {key}.{sub!r}")
                if isinstance(number, bool) or not isinstance(number, (int, float)):
                    raise ValidationError(f"config key {key}.{sub} must be a number")
                config[key][sub] = float(number)
        else:
            raise ValidationError(f"unknown config key {key!r}")


def _apply_overrides(config: dict, overrides: dict) -> None:
    for key, value in overrides.items():
        if value is None:
            continue
        if key in ("scenario", "output_dir"):
            config[key] = str(value)
        elif key == "emit_svg":
            config[key] = bool(value)
        elif "." in key:
            section, _, sub = key.partition(".")
            if section not in _SECTION_KEYS or sub not in _SECTION_KEYS[section]:
                raise ValidationError(f"unknown override key {key!r}")
            try:
                config[section][sub] = float(value)
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"override {key}={value!r} is not a number") from exc
        else:
            raise ValidationError(f"unknown override key {key!r}")


def parse_config(
    file: Path | str | None = None,
    overrides: dict | None = None,
    scenario: str | None = None,
) -> RunConfig:
    """Resolve defaults, optional JSON file, and overrides into a RunConfig.

    Raises ParseError for malformed JSON (with line and column) and
    ValidationError for unknown keys or violated invariants.
    """
    file_data: dict = {}
    if file is not None:
        path = Path(file)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read config file {path}: {exc}") from exc
        try:
            file_data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc

    effective_scenario = (
        scenario
        or (overrides or {}).get("scenario")
        or (file_data.get("scenario") if isinstance(file_data, dict) else None)
        or "simulate"
    )
    config = _default_config_dict(str(effective_scenario))
    _merge_file(config, file_data)
    _apply_overrides(config, overrides or {})
    if scenario is not None:
        config["scenario"] = scenario

    try:
        params = ModelParams(
            lam=config["params"]["lambda"],
            beta=config["params"]["beta"],
            sigma=config["params"]["sigma"],
            theta=config["params"]["theta"],
            mu=config["params"]["mu"],
            p=config["params"]["p"],
            alpha=FractionalOrder(config["params"]["alpha"]),
        )
        state = StateVector.initial(
            config["initial_state"]["S"],
            config["initial_state"]["I"],
            config["initial_state"]["Q"],
            config["initial_state"]["R"],
        )
        solver = SolverConfig(
            step_size=config["solver"]["step_size"],
            t_end=config["solver"]["t_end"],
            corrector_iterations=int(config["solver"]["corrector_iterations"]),
        )
    except (ValueError, InvalidOrder) as exc:
        raise ValidationError(str(exc)) from exc

    return RunConfig(
        params=params,
        initial_state=state,
        solver=solver,
        scenario=config["scenario"],
        output_dir=Path(config["output_dir"]),
        emit_svg=bool(config["emit_svg"]),
    )


def _safe_name(label: str) -> str:
    return label.replace(" ", "_").replace("=", "_")


def _write_runs(config: RunConfig, prefix: str, trajectories) -> None:
    for traj in trajectories:
        path = config.output_dir / f"{prefix}_{_safe_name(traj.label)}.csv"
        write_trajectory_csv(path, traj)
        print(f"wrote {path} ({len(traj.grid)} rows)")
    summary_path = config.output_dir / f"{prefix}_summary.csv"
    write_summary_csv(summary_path, [summarize(t) for t in trajectories])
    print(f"wrote {summary_path} ({len(trajectories)} rows)")
    if config.emit_svg:
        svg_path = config.output_dir / f"{prefix}.svg"
        write_trajectory_svg(svg_path, trajectories, title=prefix.replace("_", " "))
        print(f"wrote {svg_path}")


def dispatch(
    config: RunConfig,
    alphas=None,
    sigma_axis=None,
    theta_axis=None,
    workers: int = 1,
) -> int:
    """Run the configured scenario and write its artifacts.

    Returns 0 on success; errors propagate to the caller (main maps them
    to exit codes).
    """
    config.output_dir.mkdir(parents=True, exist_ok=True)

    if config.scenario == "simulate":
        label = f"alpha={config.params.alpha.alpha:g}"
        traj = simulate(config.params, config.initial_state, config.solver, label)
        path = write_trajectory_csv(config.output_dir / "trajectory.csv", traj)
        print(f"wrote {path} ({len(traj.grid)} rows)")
        summary_path = write_summary_csv(config.output_dir / "summary.csv", [summarize(traj)])
        print(f"wrote {summary_path} (1 rows)")
        if config.emit_svg:
            svg = write_trajectory_svg(config.output_dir / "trajectory.svg", [traj])
            print(f"wrote {svg}")

    elif config.scenario == "baseline":
        runs = run_baseline(
            alphas if alphas is not None else (0.96, 0.98, 1.0),
            params=config.params,
            config=config.solver,
            initial_state=config.initial_state,
        )
        _write_runs(config, "baseline", runs)

    elif config.scenario == "sigma-sweep":
        runs = run_sigma_sweep(config.params, config.solver, config.initial_state)
        _write_runs(config, "sigma_sweep", runs)

    elif config.scenario == "reinfection-sweep":
        runs = run_reinfection_sweep(config.params, config.solver, config.initial_state)
        _write_runs(config, "reinfection_sweep", runs)

    elif config.scenario == "contour":
        grid = run_contour(
            sigma_axis,
            theta_axis,
            params=config.params,
            config=config.solver,
            initial_state=config.initial_state,
            workers=workers,
        )
        path = write_grid_csv(config.output_dir / "contour.csv", grid)
        cells = grid.infected_at_end.size
        print(f"wrote {path} ({cells} rows)")
        if config.emit_svg:
            svg = write_grid_svg(config.output_dir / "contour.svg", grid)
            print(f"wrote {svg}")

    elif config.scenario == "analyze":
        stability = classify_dfe(config.params)
        sensitivity = sensitivity_indices(config.params)
        path = write_json(config.output_dir / "stability.json", stability.to_dict())
        print(f"wrote {path} (r0={stability.r0:.6g}, verdict={stability.verdict})")
        path = write_json(config.output_dir / "sensitivity.json", sensitivity.to_dict())
        print(f"wrote {path} (gamma_sigma={sensitivity.gamma_sigma:.6g})")

    return EXIT_OK


def _csv_floats(text: str) -> list[float]:
    try:
        values = [float(token) for token in text.split(",") if token.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("expected at least one number")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    run_group = common.add_argument_group("run options")
    run_group.add_argument("--config", type=Path, default=None, metavar="PATH",
                           help="JSON config file (overridden by command-line flags)")
    run_group.add_argument("--out", default=None, metavar="DIR", help="output directory (default: out)")
    run_group.add_argument("--svg", action="store_true", default=None, help="also write SVG plots")
    run_group.add_argument("--step", type=float, default=None, metavar="H",
                           help="grid step size in days (default: 0.05)")
    run_group.add_argument("--horizon", type=float, default=None, metavar="DAYS",
                           help="integration horizon in days (default: 300; contour: 1000)")
    override_group = common.add_argument_group(
        "dotted overrides", "highest-precedence settings, e.g. --params.sigma 3.19e-2"
    )
    for key in _PARAM_KEYS:
        override_group.add_argument(f"--params.{key}", type=float, default=None, metavar="X")
    for key in _STATE_KEYS:
        override_group.add_argument(f"--initial_state.{key}", type=float, default=None, metavar="X")
    for key in _SOLVER_KEYS:
        override_group.add_argument(f"--solver.{key}", type=float, default=None, metavar="X")

    parser = argparse.ArgumentParser(
        prog="fracepi",
        description="Fractional-order SIQR epidemic dynamics: solver, analysis, batch experiments.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="scenario", required=True, metavar="SCENARIO")

    sub.add_parser("simulate", parents=[common], help="single run with the configured parameters")
    baseline = sub.add_parser("baseline", parents=[common],
                              help="default dynamics at several derivative orders")
    baseline.add_argument("--alphas", type=_csv_floats, default=None, metavar="A1,A2,...",
                          help="derivative orders (default: 0.96,0.98,1)")
    sub.add_parser("sigma-sweep", parents=[common], help="isolation-rate sweep crossed with orders")
    sub.add_parser("reinfection-sweep", parents=[common],
                   help="residual-susceptibility sweep crossed with orders")
    contour = sub.add_parser("contour", parents=[common],
                             help="long-horizon (sigma, theta) grid scan at order 1")
    contour.add_argument("--sigma-axis", type=_csv_floats, default=None, metavar="S1,S2,...",
                         help="isolation-rate axis (default: 25 log-spaced in [1e-3, 1e-1])")
    contour.add_argument("--theta-axis", type=_csv_floats, default=None, metavar="T1,T2,...",
                         help="recovery-rate axis (default: 25 log-spaced in [1e-3, 1e-1])")
    contour.add_argument("--workers", type=int, default=1, metavar="N",
                         help="worker processes for grid cells (default: 1, sequential)")
    sub.add_parser("analyze", parents=[common],
                   help="equilibrium, R0, eigenvalues, and sensitivity reports")
    return parser


def _collect_overrides(namespace: argparse.Namespace) -> dict:
    overrides: dict = {k: v for k, v in vars(namespace).items() if "." in k and v is not None}
    if namespace.out is not None:
        overrides["output_dir"] = namespace.out
    if namespace.svg:
        overrides["emit_svg"] = True
    if namespace.step is not None:
        overrides["solver.step_size"] = namespace.step
    if namespace.horizon is not None:
        overrides["solver.t_end"] = namespace.horizon
    return overrides


def _exit_code_for(exc: BaseException) -> int:
    for classes, code in _EXIT_CODE_BY_ERROR:
        if isinstance(exc, classes):
            return code
    return EXIT_UNEXPECTED


def main(argv=None) -> int:
    parser = build_parser()
    namespace = parser.parse_args(argv)
    try:
        config = parse_config(
            file=namespace.config,
            overrides=_collect_overrides(namespace),
            scenario=namespace.scenario,
        )
        return dispatch(
            config,
            alphas=getattr(namespace, "alphas", None),
            sigma_axis=getattr(namespace, "sigma_axis", None),
            theta_axis=getattr(namespace, "theta_axis", None),
            workers=getattr(namespace, "workers", 1) or 1,
        )
    except (FracepiError, OSError) as exc:
        message = " ".join(str(exc).split())
        print(f"error: {message}", file=sys.stderr)
        return _exit_code_for(exc)
    except Exception as exc:  # contract: nonzero status plus a diagnostic
        message = " ".join(f"{type(exc).__name__}: {exc}".split())
        print(f"error: {message}", file=sys.stderr)
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    raise SystemExit(main())
