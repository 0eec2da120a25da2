"""CSV, JSON, and SVG artifact writers.

Numbers are formatted locale-independently with 10 significant digits and
files use '\\n' line endings, so re-running a command overwrites its
outputs byte-for-byte.  SVG rendering is presentation-only; matplotlib is
imported lazily and configured for reproducible output.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Sequence

from fracepi.scenarios import GridResult, SummaryRecord, Trajectory

TRAJECTORY_HEADER = "t,S,I,Q,R"
SUMMARY_HEADER = "label,peak_I,t_peak,final_S,final_I,final_Q,final_R,t_below_threshold"
GRID_HEADER = "sigma,theta,final_I,final_R"
NEVER_MARKER = "never"


def fmt(value: float) -> str:
    """Decimal formatting with 10 significant digits."""
    return f"{float(value):.10g}"


def write_trajectory_csv(path: Path | str, trajectory: Trajectory) -> Path:
    path = Path(path)
    lines = [TRAJECTORY_HEADER]
    for t, (s, i, q, r) in zip(trajectory.times, trajectory.grid.values):
        lines.append(f"{fmt(t)},{fmt(s)},{fmt(i)},{fmt(q)},{fmt(r)}")
    path.write_text("\n".join(lines) + "\n")
    return path


def write_summary_csv(path: Path | str, records: Iterable[SummaryRecord]) -> Path:
    path = Path(path)
    lines = [SUMMARY_HEADER]
    for rec in records:
        final = rec.final_state
        crossing = NEVER_MARKER if rec.t_below_threshold is None else fmt(rec.t_below_threshold)
        lines.append(
            ",".join(
                [
                    rec.label,
                    fmt(rec.peak_infected),
                    fmt(rec.t_peak),
                    fmt(final.S),
                    fmt(final.I),
                    fmt(final.Q),
                    fmt(final.R),
                    crossing,
                ]
            )
        )
    path.write_text("\n".join(lines) + "\n")
    return path


def write_grid_csv(path: Path | str, grid: GridResult) -> Path:
    """Long-form grid table, sigma-major row order."""
    path = Path(path)
    lines = [GRID_HEADER]
    for i, sigma in enumerate(grid.sigma_values):
        for j, theta in enumerate(grid.theta_values):
            lines.append(
                f"{fmt(sigma)},{fmt(theta)},"
                f"{fmt(grid.infected_at_end[i, j])},{fmt(grid.recovered_at_end[i, j])}"
            )
    path.write_text("\n".join(lines) + "\n")
    return path


def write_json(path: Path | str, payload: dict) -> Path:
    path = Path(path)
    path.write_text(json.dumps(payload, indent=2) + "\n")
    return path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "fracepi"
    return plt


def write_trajectory_svg(path: Path | str, trajectories: Sequence[Trajectory], title: str = "") -> Path:
    """Line plot: all compartments for a single run, infected otherwise."""
    plt = _pyplot()
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if len(trajectories) == 1:
        traj = trajectories[0]
        for name, series in (("S", traj.S), ("I", traj.I), ("Q", traj.Q), ("R", traj.R)):
            ax.plot(traj.times, series, label=name)
    else:
        for traj in trajectories:
            ax.plot(traj.times, traj.I, label=traj.label)
    ax.set_xlabel("time (days)")
    ax.set_ylabel("population density")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def write_grid_svg(path: Path | str, grid: GridResult, title: str = "") -> Path:
    """Two heatmaps: final infected (left) and recovered (right)."""
    plt = _pyplot()
    path = Path(path)
    fig, axes = plt.subplots(1, 2, figsize=(10, 4.2))
    for ax, matrix, name in (
        (axes[0], grid.infected_at_end, "final infected"),
        (axes[1], grid.recovered_at_end, "final recovered"),
    ):
        mesh = ax.pcolormesh(grid.theta_values, grid.sigma_values, matrix, shading="auto")
        if len(grid.theta_values) > 1:
            ax.set_xscale("log")
        if len(grid.sigma_values) > 1:
            ax.set_yscale("log")
        ax.set_xlabel("theta (1/day)")
        ax.set_ylabel("sigma (1/day)")
        ax.set_title(name, fontsize=10)
        fig.colorbar(mesh, ax=ax)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
