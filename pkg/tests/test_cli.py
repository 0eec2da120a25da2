"""Command-line behavior: config precedence, artifacts, exit codes."""

import json

import pytest

from fracepi.cli import (
    EXIT_ANALYSIS,
    EXIT_CONFIG,
    EXIT_IO,
    EXIT_NUMERIC,
    EXIT_OK,
    RunConfig,
    build_parser,
    main,
    parse_config,
)
from fracepi.errors import ParseError, ValidationError


# ----------------------------------------------------------- configuration

def test_defaults_match_baseline_settings():
    config = parse_config()
    assert config.scenario == "simulate"
    assert config.params.lam == 1.45e-1
    assert config.params.p == 0.30
    assert config.params.alpha.alpha == 1.0
    assert (config.initial_state.S, config.initial_state.I) == (153.0, 138.0)
    assert config.solver.step_size == 0.05
    assert config.solver.t_end == 300.0
    assert config.emit_svg is False


def test_contour_defaults_use_long_horizon():
    assert parse_config(scenario="contour").solver.t_end == 1000.0


def test_round_trip_through_json(tmp_path):
    original = parse_config(
        overrides={"params.sigma": 3.19e-2, "params.alpha": 0.98, "solver.step_size": 0.1},
        scenario="baseline",
    )
    path = tmp_path / "config.json"
    path.write_text(original.to_json())
    assert parse_config(file=path) == original


def test_override_beats_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"params": {"p": 0.2}}))
    config = parse_config(file=path, overrides={"params.p": 0.4})
    assert config.params.p == 0.4


def test_file_beats_defaults(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"params": {"sigma": 5.69e-2}, "output_dir": "elsewhere"}))
    config = parse_config(file=path)
    assert config.params.sigma == 5.69e-2
    assert str(config.output_dir) == "elsewhere"


def test_unknown_file_keys_rejected(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"params": {"gamma": 1.0}}))
    with pytest.raises(ValidationError, match="gamma"):
        parse_config(file=path)
    path.write_text(json.dumps({"bogus": 1}))
    with pytest.raises(ValidationError, match="bogus"):
        parse_config(file=path)


def test_unknown_override_keys_rejected():
    with pytest.raises(ValidationError, match="params.bogus"):
        parse_config(overrides={"params.bogus": 1.0})


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "config.json"
    path.write_text('{"params": {')
    with pytest.raises(ParseError, match=r":\d+:\d+:"):
        parse_config(file=path)


def test_validation_names_the_violated_invariant():
    with pytest.raises(ValidationError, match=r"\(0, 1\]"):
        parse_config(overrides={"params.alpha": 1.5})
    with pytest.raises(ValidationError, match=r"\[0, 1\)"):
        parse_config(overrides={"params.p": 1.0})


def test_unknown_scenario_rejected():
    with pytest.raises(ValidationError):
        parse_config(scenario="explode")


def test_parser_rejects_unknown_dotted_key(capsys):
    with pytest.raises(SystemExit) as excinfo:
        build_parser().parse_args(["simulate", "--params.bogus", "1"])
    assert excinfo.value.code == 2
    assert "error" in capsys.readouterr().err


def test_help_documents_exit_codes(capsys):
    with pytest.raises(SystemExit) as excinfo:
        build_parser().parse_args(["--help"])
    assert excinfo.value.code == 0
    assert "exit codes" in capsys.readouterr().out


# ------------------------------------------------------------ dispatch runs

def run_cli(args):
    return main(args)


def test_baseline_writes_three_runs_and_summary(tmp_path, capsys):
    out = tmp_path / "artifacts"
    code = run_cli(["baseline", "--out", str(out), "--step", "0.5", "--horizon", "5"])
    assert code == EXIT_OK
    csvs = sorted(p.name for p in out.glob("*.csv"))
    assert csvs == [
        "baseline_alpha_0.96.csv",
        "baseline_alpha_0.98.csv",
        "baseline_alpha_1.csv",
        "baseline_summary.csv",
    ]
    stdout = capsys.readouterr().out
    assert stdout.count("wrote ") == 4


def test_rerun_overwrites_byte_identical(tmp_path):
    out = tmp_path / "artifacts"
    args = ["baseline", "--out", str(out), "--step", "0.5", "--horizon", "5"]
    assert run_cli(args) == EXIT_OK
    snapshot = {p.name: p.read_bytes() for p in out.glob("*")}
    assert run_cli(args) == EXIT_OK
    assert {p.name: p.read_bytes() for p in out.glob("*")} == snapshot


def test_simulate_with_svg(tmp_path):
    out = tmp_path / "artifacts"
    code = run_cli(["simulate", "--out", str(out), "--step", "0.5", "--horizon", "5", "--svg"])
    assert code == EXIT_OK
    assert (out / "trajectory.csv").exists()
    assert (out / "summary.csv").exists()
    assert (out / "trajectory.svg").exists()


def test_analyze_reports(tmp_path):
    out = tmp_path / "artifacts"
    assert run_cli(["analyze", "--out", str(out)]) == EXIT_OK
    stability = json.loads((out / "stability.json").read_text())
    assert stability["verdict"] == "Unstable"
    assert stability["r0"] == pytest.approx(7.763734483098731, rel=1e-12)
    assert stability["dfe"]["I"] == 0.0
    sensitivity = json.loads((out / "sensitivity.json").read_text())
    assert round(sensitivity["gamma_sigma"], 2) == -0.98
    assert len(sensitivity["finite_difference_check"]) == 3


def test_single_cell_contour(tmp_path):
    out = tmp_path / "artifacts"
    code = run_cli([
        "contour", "--out", str(out), "--step", "0.5", "--horizon", "5",
        "--sigma-axis", "1.69e-2", "--theta-axis", "1.81e-2",
    ])
    assert code == EXIT_OK
    lines = (out / "contour.csv").read_text().splitlines()
    assert lines[0] == "sigma,theta,final_I,final_R"
    assert len(lines) == 2


def test_sweep_scenarios_write_nine_runs(tmp_path):
    out = tmp_path / "artifacts"
    code = run_cli(["sigma-sweep", "--out", str(out), "--step", "0.5", "--horizon", "5"])
    assert code == EXIT_OK
    assert len(list(out.glob("sigma_sweep_*.csv"))) == 10  # 9 runs + summary


def test_config_file_drives_run(tmp_path):
    out = tmp_path / "artifacts"
    config = tmp_path / "config.json"
    config.write_text(json.dumps({
        "output_dir": str(out),
        "params": {"alpha": 0.98},
        "solver": {"step_size": 0.5, "t_end": 5.0},
    }))
    assert run_cli(["simulate", "--config", str(config)]) == EXIT_OK
    header = (out / "trajectory.csv").read_text().splitlines()[0]
    assert header == "t,S,I,Q,R"


# -------------------------------------------------------------- error paths

def test_invalid_order_exits_config_code(tmp_path, capsys):
    code = run_cli(["simulate", "--out", str(tmp_path), "--params.alpha", "1.5"])
    assert code == EXIT_CONFIG
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert "\n" not in err.strip()


def test_blowup_exits_numeric_code(tmp_path, capsys):
    code = run_cli([
        "simulate", "--out", str(tmp_path), "--params.beta", "1e200",
        "--step", "0.5", "--horizon", "5",
    ])
    assert code == EXIT_NUMERIC
    assert capsys.readouterr().err.startswith("error:")


def test_zero_death_rate_exits_analysis_code(tmp_path, capsys):
    code = run_cli(["analyze", "--out", str(tmp_path), "--params.mu", "0"])
    assert code == EXIT_ANALYSIS
    assert capsys.readouterr().err.startswith("error:")


def test_unwritable_output_exits_io_code(tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("a file, not a directory")
    code = run_cli(["analyze", "--out", str(blocker / "sub")])
    assert code == EXIT_IO
    assert capsys.readouterr().err.startswith("error:")


def test_missing_config_file_exits_config_code(tmp_path, capsys):
    code = run_cli(["simulate", "--out", str(tmp_path), "--config", str(tmp_path / "nope.json")])
    assert code == EXIT_CONFIG
    assert capsys.readouterr().err.startswith("error:")


# ------------------------------------------------------------ config object

def test_run_config_rejects_unknown_scenario():
    config = parse_config()
    with pytest.raises(ValidationError):
        RunConfig(
            params=config.params,
            initial_state=config.initial_state,
            solver=config.solver,
            scenario="nonsense",
            output_dir=config.output_dir,
            emit_svg=False,
        )
