#!/usr/bin/env python3
"""Empirical convergence orders of the Caputo PECE solver.

Measures the end-point error slope on the relaxation problem
D^a y = -y, y(0) = 1 (exact solution E_a(-t^a)) for several derivative
orders, and the raw end-point errors of the power-function problem
D^a y = Gamma(1+a), y(0) = 0 (exact solution t^a, integrated exactly by
the product-trapezoid weights, so only roundoff should remain).
"""

import math

import numpy as np

from fracepi.fractional import FractionalOrder, SolverConfig, convergence_order, mittag_leffler, solve_caputo_ivp


def relaxation_slopes() -> None:
    print("relaxation problem D^a y = -y: log-log error slope at t = 1")
    print(f"{'order':>6} {'steps':>22} {'slope':>7} {'min(2, 1+a)':>12}")
    for alpha in (0.5, 0.7, 0.9, 1.0):
        steps = [0.02, 0.01, 0.005, 0.0025]
        slope = convergence_order(
            lambda t, y: -y,
            lambda t, a=alpha: mittag_leffler(a, -(t ** a)),
            FractionalOrder(alpha),
            steps,
            [1.0],
        )
        print(f"{alpha:6.2f} {str(steps):>22} {slope:7.3f} {min(2.0, 1.0 + alpha):12.2f}")


def power_function_errors() -> None:
    print("\npower problem D^a y = Gamma(1+a): end-point error at t = 1 (roundoff floor)")
    for alpha in (0.5, 0.8, 1.0):
        c = math.gamma(1.0 + alpha)
        grid = solve_caputo_ivp(
            lambda t, y: np.full_like(y, c), [0.0], FractionalOrder(alpha), SolverConfig(1e-3, 1.0)
        )
        print(f"  order {alpha:4.2f}: |y(1) - 1| = {abs(grid.final_value[0] - 1.0):.3e}")


if __name__ == "__main__":
    relaxation_slopes()
    power_function_errors()
