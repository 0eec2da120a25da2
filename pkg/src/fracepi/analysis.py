"""Closed-form analysis at the disease-free equilibrium.

Everything is expressed in effective (alpha-powered) rates.  The
disease-free equilibrium is (lam^a/mu^a, 0, 0, 0); restricting the
next-generation construction to the infected/isolated block gives the
basic reproduction number in closed form,

    R0 = beta^a * lam^a / (mu^a * (sigma^a + mu^a)),

which the spectral radius of the next-generation matrix (new-infection
matrix times inverted transfer matrix) must reproduce.  The linearization
at the equilibrium is triangular enough that its four eigenvalues are
explicit; the verdict LocallyAsymptoticallyStable/Unstable follows the
R0 < 1 criterion and must agree with the eigenvalue signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from fracepi.errors import BoundaryCase, SingularTransitionMatrix, ZeroDeathRate, ZeroRate
from fracepi.model import EffectiveRates, ModelParams, StateVector, effective_rates

VERDICT_STABLE = "LocallyAsymptoticallyStable"
VERDICT_UNSTABLE = "Unstable"

# |R0 - 1| below this is refused: the criterion is silent at R0 = 1.
R0_BOUNDARY_TOL = 1e-9

# Relative step for the central finite-difference cross-check.
FD_RELATIVE_STEP = 1e-6


@dataclass(frozen=True)
class StabilityReport:
    """Equilibrium coordinates, R0, eigenvalues, and the verdict."""

    dfe: StateVector
    r0: float
    eigenvalues: tuple[float, float, float, float]
    verdict: str

    def to_dict(self) -> dict:
        return {
            "dfe": {"S": self.dfe.S, "I": self.dfe.I, "Q": self.dfe.Q, "R": self.dfe.R},
            "r0": self.r0,
            "eigenvalues": list(self.eigenvalues),
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class SensitivityReport:
    """Normalized sensitivity indices of R0 in the effective rates.

    finite_difference_check pairs each analytic index with the central
    finite-difference value computed from the closed form.
    """

    gamma_lambda: float
    gamma_beta: float
    gamma_sigma: float
    finite_difference_check: tuple[tuple[str, float, float], ...]

    def to_dict(self) -> dict:
        return {
            "gamma_lambda": self.gamma_lambda,
            "gamma_beta": self.gamma_beta,
            "gamma_sigma": self.gamma_sigma,
            "finite_difference_check": [list(row) for row in self.finite_difference_check],
        }


def _rates_with_positive_mu(params: ModelParams) -> EffectiveRates:
    if params.mu == 0.0:
        raise ZeroDeathRate("mu = 0: the disease-free equilibrium is undefined")
    return effective_rates(params)


def _r0_from_effective(lam_a: float, beta_a: float, sigma_a: float, mu_a: float) -> float:
    return (beta_a * lam_a) / (mu_a * (sigma_a + mu_a))


def disease_free_equilibrium(params: ModelParams) -> StateVector:
    """Steady state with no infection: (lam^a/mu^a, 0, 0, 0)."""
    rates = _rates_with_positive_mu(params)
    return StateVector(rates.lam / rates.mu, 0.0, 0.0, 0.0)


def r0_closed_form(params: ModelParams) -> float:
    """Basic reproduction number from the closed-form expression."""
    rates = _rates_with_positive_mu(params)
    return _r0_from_effective(rates.lam, rates.beta, rates.sigma, rates.mu)


def r0_ngm(params: ModelParams) -> float:
    """Basic reproduction number via the next-generation matrix.

    Builds the new-infection matrix and the transfer matrix of the (I, Q)
    block, both evaluated at the disease-free point (I = 0, R = 0,
    S = lam^a/mu^a), inverts the transfer matrix by the 2x2 cofactor
    formula, and takes the spectral radius of their product from the
    quadratic formula.
    """
    rates = _rates_with_positive_mu(params)
    s_star = rates.lam / rates.mu

    f_mat = np.array([[rates.beta * s_star, 0.0], [0.0, 0.0]])
    v_mat = np.array([[rates.sigma + rates.mu, 0.0], [rates.beta * s_star, rates.mu]])

    det = v_mat[0, 0] * v_mat[1, 1] - v_mat[0, 1] * v_mat[1, 0]
    if det == 0.0:
        raise SingularTransitionMatrix("transfer matrix is singular (sigma^a + mu^a or mu^a vanishes)")
    v_inv = np.array([[v_mat[1, 1], -v_mat[0, 1]], [-v_mat[1, 0], v_mat[0, 0]]]) / det

    ngm = f_mat @ v_inv
    trace = ngm[0, 0] + ngm[1, 1]
    det_ngm = ngm[0, 0] * ngm[1, 1] - ngm[0, 1] * ngm[1, 0]
    disc = trace * trace - 4.0 * det_ngm
    if disc >= 0.0:
        root = math.sqrt(disc)
        return max(abs(0.5 * (trace + root)), abs(0.5 * (trace - root)))
    # complex pair: both eigenvalues share modulus sqrt(det)
    return math.sqrt(abs(det_ngm))


def dfe_eigenvalues(params: ModelParams) -> list[float]:
    """Eigenvalues of the linearization at the disease-free equilibrium.

    Returned in the fixed order
        [-theta^a - mu^a,
         (beta^a*lam^a - (mu^a)^2 - mu^a*sigma^a) / mu^a,
         -mu^a, -mu^a].
    Only the second can change sign; it is positive exactly when R0 > 1.
    """
    rates = _rates_with_positive_mu(params)
    lam1 = -rates.theta - rates.mu
    lam2 = (rates.beta * rates.lam - rates.mu ** 2 - rates.mu * rates.sigma) / rates.mu
    return [lam1, lam2, -rates.mu, -rates.mu]


def classify_dfe(params: ModelParams) -> StabilityReport:
    """Stability verdict at the disease-free equilibrium.

    Refuses |R0 - 1| < R0_BOUNDARY_TOL (no verdict exists there) and
    enforces agreement between the R0 criterion and the eigenvalue signs.
    """
    r0 = r0_closed_form(params)
    if abs(r0 - 1.0) < R0_BOUNDARY_TOL:
        raise BoundaryCase(f"R0 = {r0!r} is numerically 1; no stability verdict")
    eigenvalues = tuple(dfe_eigenvalues(params))
    verdict = VERDICT_STABLE if r0 < 1.0 else VERDICT_UNSTABLE
    if (max(eigenvalues) < 0.0) != (r0 < 1.0):
        raise RuntimeError(
            f"internal inconsistency: R0 = {r0!r} but max eigenvalue = {max(eigenvalues)!r}"
        )
    return StabilityReport(
        dfe=disease_free_equilibrium(params),
        r0=r0,
        eigenvalues=eigenvalues,
        verdict=verdict,
    )


def sensitivity_indices(params: ModelParams) -> SensitivityReport:
    """Normalized sensitivity indices of R0 with respect to effective rates.

    Analytically gamma_lambda = gamma_beta = +1 regardless of parameter
    values, and gamma_sigma = -sigma^a / (sigma^a + mu^a).  Each index is
    re-derived by central finite differences on the closed form with
    relative step FD_RELATIVE_STEP, perturbing the effective rate itself.
    """
    if params.sigma == 0.0 or params.mu == 0.0:
        raise ZeroRate("sensitivity indices require sigma > 0 and mu > 0")
    rates = effective_rates(params)
    base = _r0_from_effective(rates.lam, rates.beta, rates.sigma, rates.mu)
    if base == 0.0:
        raise ZeroRate("R0 = 0: normalized indices are undefined")

    gamma_sigma = -rates.sigma / (rates.sigma + rates.mu)
    analytic = {"lambda": 1.0, "beta": 1.0, "sigma": gamma_sigma}

    def perturbed(name: str, scale: float) -> float:
        values = {"lambda": rates.lam, "beta": rates.beta, "sigma": rates.sigma}
        values[name] = values[name] * scale
        return _r0_from_effective(values["lambda"], values["beta"], values["sigma"], rates.mu)

    checks = []
    for name in ("lambda", "beta", "sigma"):
        up = perturbed(name, 1.0 + FD_RELATIVE_STEP)
        down = perturbed(name, 1.0 - FD_RELATIVE_STEP)
        numeric = (up - down) / (2.0 * FD_RELATIVE_STEP * base)
        checks.append((name, analytic[name], numeric))

    return SensitivityReport(
        gamma_lambda=analytic["lambda"],
        gamma_beta=analytic["beta"],
        gamma_sigma=analytic["sigma"],
        finite_difference_check=tuple(checks),
    )
