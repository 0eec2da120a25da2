"""Caputo fractional initial value problems on uniform time grids.

Solves D^a y = f(t, y), y(0) = y0 for orders a in (0, 1] with the
Adams-Bashforth-Moulton predictor-corrector (PECE) scheme: the predictor
is the product-rectangle discretization of the Riemann-Liouville integral
with weights

    b[j, n+1] = (h^a / a) * ((n+1-j)^a - (n-j)^a),        j = 0..n,

the corrector the product-trapezoid discretization with weights

    a[0, n+1]   = n^(a+1) - (n - a) * (n+1)^a,
    a[j, n+1]   = (n-j+2)^(a+1) + (n-j)^(a+1) - 2*(n-j+1)^(a+1),  1 <= j <= n,
    a[n+1, n+1] = 1,

scaled by h^a / Gamma(a+2).  The full history is kept (no short-memory
truncation), so one solve costs O(N^2).  At a = 1 every history weight is
constant and the identical quadrature sums are maintained incrementally,
giving O(N); the two code paths evaluate the same formulas.

The module also houses the one-parameter Mittag-Leffler series, the
eigenfunction family of the Caputo derivative and the solver's natural
validation oracle, plus an empirical convergence-order estimator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from fracepi.errors import (
    DegenerateErrors,
    InvalidOrder,
    NonConvergent,
    NonFiniteState,
    OutOfRange,
)

# Mittag-Leffler working limits
ML_MAX_ABS_ARG = 10.0
ML_MAX_TERMS = 1000
ML_RELATIVE_CUTOFF = 1e-16

# Uniform-grid spacing check: relative to h, plus a few ulps of the largest
# time (consecutive k*h values cannot be tighter than that in float64).
SPACING_RTOL = 1e-12
_SPACING_ULPS = 8.0


@dataclass(frozen=True)
class FractionalOrder:
    """Order of the fractional derivative, restricted to (0, 1]."""

    alpha: float

    def __post_init__(self) -> None:
        alpha = float(self.alpha)
        if not (0.0 < alpha <= 1.0):  # also rejects NaN
            raise InvalidOrder(f"derivative order must lie in (0, 1], got {self.alpha!r}")
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class SolverConfig:
    """Uniform-grid integration settings.

    The grid has n_steps = round(t_end / step_size) intervals of width
    step_size starting at t = 0.  corrector_iterations > 1 re-evaluates
    the right-hand side after each correction (PE(CE)^m).
    """

    step_size: float
    t_end: float
    corrector_iterations: int = 1

    def __post_init__(self) -> None:
        if not (self.step_size > 0.0 and math.isfinite(self.step_size)):
            raise ValueError(f"step_size must be positive and finite, got {self.step_size!r}")
        if not (self.t_end >= self.step_size and math.isfinite(self.t_end)):
            raise ValueError(f"t_end must be finite and >= step_size, got {self.t_end!r}")
        if int(self.corrector_iterations) != self.corrector_iterations or self.corrector_iterations < 1:
            raise ValueError(f"corrector_iterations must be a positive integer, got {self.corrector_iterations!r}")
        if self.n_steps < 1:
            raise ValueError("grid must contain at least one step")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.step_size))


@dataclass(frozen=True, eq=False)
class GridFunction:
    """A state trajectory sampled on the uniform grid t_k = k*h.

    values has shape (len(times), dim); row k is the state at times[k].
    """

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if times.ndim != 1 or len(times) < 2:
            raise ValueError("times must be a 1-d array with at least two points")
        if values.shape[0] != times.shape[0]:
            raise ValueError("values and times must have equal length")
        if times[0] != 0.0:
            raise ValueError(f"grid must start at t = 0, got {times[0]!r}")
        spacing = np.diff(times)
        h = spacing[0]
        tol = SPACING_RTOL * h + _SPACING_ULPS * np.finfo(float).eps * abs(times[-1])
        if h <= 0.0 or not np.all(np.abs(spacing - h) <= tol):
            raise ValueError("grid spacing is not uniform")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def step(self) -> float:
        return float(self.times[1] - self.times[0])

    @property
    def final_value(self) -> np.ndarray:
        return self.values[-1]


def predictor_weights(alpha: float, n: int, h: float) -> np.ndarray:
    """Rectangle-rule history weights b[j, n+1] for j = 0..n.

    They telescope: sum_j b[j, n+1] = h^alpha * (n+1)^alpha / alpha.
    """
    j = np.arange(n + 1, dtype=float)
    return (h ** alpha / alpha) * ((n + 1 - j) ** alpha - (n - j) ** alpha)


def _corrector_kernel(alpha: float, n_steps: int) -> tuple[np.ndarray, np.ndarray]:
    """Trapezoid-rule weight pieces reused across steps.

    Returns (inner, first) where inner[k] is the weight of f_j with
    k = n - j for 1 <= j <= n, and first[n] the weight of f_0 at step n+1.
    """
    k = np.arange(n_steps + 1, dtype=float)
    inner = (k + 2.0) ** (alpha + 1.0) + k ** (alpha + 1.0) - 2.0 * (k + 1.0) ** (alpha + 1.0)
    first = k ** (alpha + 1.0) - (k - alpha) * (k + 1.0) ** alpha
    return inner, first


def solve_caputo_ivp(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: Sequence[float] | np.ndarray,
    order: FractionalOrder,
    config: SolverConfig,
) -> GridFunction:
    """Integrate D^alpha y = rhs(t, y), y(0) = y0 on the uniform grid.

    The state dimension is taken from y0; rhs must return an array of the
    same shape.  Raises NonFiniteState as soon as any component of the
    corrected state stops being finite.
    """
    alpha = order.alpha
    h = config.step_size
    n_steps = config.n_steps
    m = int(config.corrector_iterations)

    y0 = np.atleast_1d(np.asarray(y0, dtype=float)).copy()
    if y0.ndim != 1:
        raise ValueError("y0 must be a scalar or 1-d state vector")
    if not np.isfinite(y0).all():
        raise NonFiniteState("initial state contains non-finite components")

    f0 = np.asarray(rhs(0.0, y0), dtype=float)
    if f0.shape != y0.shape:
        raise ValueError(f"rhs returned shape {f0.shape}, expected {y0.shape}")

    times = np.arange(n_steps + 1, dtype=float) * h
    values = np.empty((n_steps + 1, y0.size), dtype=float)
    values[0] = y0

    # overflow in a diverging step is reported as NonFiniteState, not a warning
    with np.errstate(over="ignore", invalid="ignore"):
        if alpha == 1.0:
            _advance_integer(rhs, y0, f0, h, n_steps, m, times, values)
        else:
            _advance_fractional(rhs, y0, f0, alpha, h, n_steps, m, times, values)

    return GridFunction(times=times, values=values)


def _advance_fractional(rhs, y0, f0, alpha, h, n_steps, m, times, values) -> None:
    """General-order PECE loop with full O(N^2) history sums."""
    pred_scale = 1.0 / math.gamma(alpha)
    corr_scale = h ** alpha / math.gamma(alpha + 2.0)

    # predictor_weights(alpha, N, h)[N-n+j] equals b[j, n+1]: the weights
    # for earlier steps are contiguous suffixes of one precomputed array.
    wb = predictor_weights(alpha, n_steps, h)
    inner, first = _corrector_kernel(alpha, n_steps)
    wc = inner[::-1].copy()  # wc[N-n+j] = inner weight of f_j (j >= 1)

    n_total = n_steps
    f_hist = np.empty((n_steps + 1, y0.size), dtype=float)
    f_hist[0] = f0
    for n in range(n_steps):
        t_next = times[n + 1]
        hist_pred = wb[n_total - n:] @ f_hist[: n + 1]
        y_pred = y0 + pred_scale * hist_pred

        f_new = np.asarray(rhs(t_next, y_pred), dtype=float)
        hist_corr = first[n] * f_hist[0]
        if n >= 1:
            # wc[N-n+j] is the inner trapezoid weight of f_j at step n+1
            hist_corr = hist_corr + wc[n_total - n + 1 : n_total + 1] @ f_hist[1 : n + 1]
        for _ in range(m):
            y_next = y0 + corr_scale * (f_new + hist_corr)
            f_new = np.asarray(rhs(t_next, y_next), dtype=float)

        if not np.isfinite(y_next).all():
            raise NonFiniteState(f"state became non-finite at t = {t_next:.6g} (step {n + 1})")
        values[n + 1] = y_next
        f_hist[n + 1] = f_new


def _advance_integer(rhs, y0, f0, h, n_steps, m, times, values) -> None:
    """alpha = 1 loop: constant weights, so history sums update in O(1).

    b[j, n+1] = h and the trapezoid weights are (1, 2, ..., 2, 1); the
    running sums reproduce the general path's quadrature exactly.
    """
    sum_all = f0.copy()            # sum of f_0..f_n
    sum_inner = np.zeros_like(y0)  # sum of f_1..f_n
    half_h = 0.5 * h
    for n in range(n_steps):
        t_next = times[n + 1]
        y_pred = y0 + h * sum_all

        f_new = np.asarray(rhs(t_next, y_pred), dtype=float)
        hist_corr = f0 + 2.0 * sum_inner
        for _ in range(m):
            y_next = y0 + half_h * (f_new + hist_corr)
            f_new = np.asarray(rhs(t_next, y_next), dtype=float)

        if not np.isfinite(y_next).all():
            raise NonFiniteState(f"state became non-finite at t = {t_next:.6g} (step {n + 1})")
        values[n + 1] = y_next
        sum_all += f_new
        sum_inner += f_new


def mittag_leffler(alpha: float, z: float) -> float:
    """One-parameter Mittag-Leffler function E_alpha(z) by direct summation.

    Sums z^k / Gamma(alpha*k + 1) until the next term falls below
    ML_RELATIVE_CUTOFF times the running sum, with at most ML_MAX_TERMS
    terms.  The working range is |z| <= ML_MAX_ABS_ARG; E_1(z) = exp(z).
    """
    alpha = FractionalOrder(alpha).alpha
    z = float(z)
    if abs(z) > ML_MAX_ABS_ARG:
        raise OutOfRange(f"|z| = {abs(z):.6g} exceeds the working range {ML_MAX_ABS_ARG}")
    if z == 0.0:
        return 1.0

    log_abs_z = math.log(abs(z))
    total = 1.0  # k = 0 term
    for k in range(1, ML_MAX_TERMS + 1):
        log_term = k * log_abs_z - math.lgamma(alpha * k + 1.0)
        magnitude = math.exp(log_term) if log_term < 709.0 else math.inf
        term = -magnitude if (z < 0.0 and k % 2 == 1) else magnitude
        if abs(term) < ML_RELATIVE_CUTOFF * abs(total):
            return total
        total += term
    raise NonConvergent(
        f"series for E_{alpha:g}({z:g}) did not settle within {ML_MAX_TERMS} terms"
    )


def convergence_order(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    exact_solution: Callable[[float], float | Sequence[float]],
    order: FractionalOrder,
    step_sizes: Sequence[float],
    y0: Sequence[float] | np.ndarray,
    t_end: float = 1.0,
) -> float:
    """Empirical order: least-squares slope of log(error) vs log(h).

    Solves the problem at every step size, measures the end-point error
    against exact_solution, and fits the slope.  An exactly-zero error
    raises DegenerateErrors (the test problem is too easy to rank).
    """
    step_sizes = [float(h) for h in step_sizes]
    if len(step_sizes) < 2:
        raise ValueError("need at least two step sizes")
    if any(b >= a for a, b in zip(step_sizes, step_sizes[1:])):
        raise ValueError("step sizes must be strictly decreasing")

    errors = []
    for h in step_sizes:
        grid = solve_caputo_ivp(rhs, y0, order, SolverConfig(step_size=h, t_end=t_end))
        reference = np.atleast_1d(np.asarray(exact_solution(grid.times[-1]), dtype=float))
        err = float(np.max(np.abs(grid.final_value - reference)))
        if err == 0.0:
            raise DegenerateErrors(f"end-point error is exactly zero at h = {h:g}")
        errors.append(err)

    slope, _ = np.polyfit(np.log(step_sizes), np.log(errors), 1)
    return float(slope)
