"""SIQR compartment model with reinfection under a Caputo derivative.

State (S, I, Q, R): susceptible, infected, isolated (quarantined) and
recovered population densities.  Every epidemiological rate q enters the
vector field as q**alpha, where alpha is the derivative order, and the
reinfection rate is the product of the powered contact rate and powered
residual susceptibility, r^a = beta^a * p^a:

    dS = lam^a - beta^a*S*I - mu^a*S
    dI = beta^a*S*I + r^a*R*I - sigma^a*I - mu^a*I
    dQ = sigma^a*I - theta^a*Q - mu^a*Q
    dR = theta^a*Q - r^a*R*I - mu^a*R

A single natural death rate mu applies to all compartments.  Parameter
values are stored as base rates; the powering happens in one place
(effective_rate) so alpha = 1 reproduces the plain rates exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from fracepi.fractional import FractionalOrder

# Baseline epidemiological rates (per day; contact rate per individual-day).
DEFAULT_RECRUITMENT = 1.45e-1
DEFAULT_CONTACT = 3.80e-4
DEFAULT_ISOLATION = 1.69e-2
DEFAULT_RECOVERY = 1.81e-2
DEFAULT_DEATH = 4.10e-4
DEFAULT_SUSCEPTIBILITY = 0.30  # residual susceptibility p of the recovered


@dataclass(frozen=True)
class ModelParams:
    """Base rates plus the derivative order.

    p is the dimensionless residual susceptibility of recovered
    individuals, restricted to [0, 1) so the derived reinfection rate
    r = beta * p stays strictly below the contact rate.
    """

    lam: float = DEFAULT_RECRUITMENT
    beta: float = DEFAULT_CONTACT
    sigma: float = DEFAULT_ISOLATION
    theta: float = DEFAULT_RECOVERY
    mu: float = DEFAULT_DEATH
    p: float = DEFAULT_SUSCEPTIBILITY
    alpha: FractionalOrder = FractionalOrder(1.0)

    def __post_init__(self) -> None:
        if not isinstance(self.alpha, FractionalOrder):
            object.__setattr__(self, "alpha", FractionalOrder(float(self.alpha)))
        for name in ("lam", "beta", "sigma", "theta", "mu"):
            value = float(getattr(self, name))
            if not (value >= 0.0 and math.isfinite(value)):
                raise ValueError(f"rate {name} must be finite and >= 0, got {value!r}")
            object.__setattr__(self, name, value)
        p = float(self.p)
        if not (0.0 <= p < 1.0):
            raise ValueError(f"susceptibility p must lie in [0, 1), got {p!r}")
        object.__setattr__(self, "p", p)

    @property
    def r(self) -> float:
        """Derived base reinfection rate."""
        return self.beta * self.p


@dataclass(frozen=True)
class EffectiveRates:
    """Alpha-powered rates as they appear in the vector field."""

    lam: float
    beta: float
    sigma: float
    theta: float
    mu: float
    p: float
    r: float


@dataclass(frozen=True)
class StateVector:
    """Population densities of one (S, I, Q, R) state."""

    S: float
    I: float
    Q: float
    R: float

    def __post_init__(self) -> None:
        for name in ("S", "I", "Q", "R"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"component {name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def initial(cls, S: float, I: float, Q: float, R: float) -> "StateVector":
        """Construct an initial condition; components must be >= 0."""
        if min(S, I, Q, R) < 0.0:
            raise ValueError(f"initial state must be non-negative, got {(S, I, Q, R)}")
        return cls(S, I, Q, R)

    @classmethod
    def from_array(cls, values) -> "StateVector":
        S, I, Q, R = np.asarray(values, dtype=float)
        return cls(float(S), float(I), float(Q), float(R))

    def as_array(self) -> np.ndarray:
        return np.array([self.S, self.I, self.Q, self.R], dtype=float)

    @property
    def total(self) -> float:
        return self.S + self.I + self.Q + self.R


def effective_rate(base: float, alpha: FractionalOrder | float) -> float:
    """Power a base rate by the derivative order: base**alpha.

    The single point where alpha-scaling happens; 0**alpha = 0 and
    alpha = 1 returns base unchanged.
    """
    if not isinstance(alpha, FractionalOrder):
        alpha = FractionalOrder(float(alpha))
    base = float(base)
    if base < 0.0:
        raise ValueError(f"rates must be non-negative, got {base!r}")
    return base ** alpha.alpha


def effective_rates(params: ModelParams) -> EffectiveRates:
    """All powered rates of a parameter set, with r^a = beta^a * p^a."""
    alpha = params.alpha
    beta_a = effective_rate(params.beta, alpha)
    p_a = effective_rate(params.p, alpha)
    return EffectiveRates(
        lam=effective_rate(params.lam, alpha),
        beta=beta_a,
        sigma=effective_rate(params.sigma, alpha),
        theta=effective_rate(params.theta, alpha),
        mu=effective_rate(params.mu, alpha),
        p=p_a,
        r=beta_a * p_a,
    )


def siqr_field(rates: EffectiveRates, y) -> np.ndarray:
    """Vector field evaluated with already-powered rates."""
    S, I, Q, R = y
    new_infections = rates.beta * S * I
    reinfections = rates.r * R * I
    return np.array(
        [
            rates.lam - new_infections - rates.mu * S,
            new_infections + reinfections - rates.sigma * I - rates.mu * I,
            rates.sigma * I - rates.theta * Q - rates.mu * Q,
            rates.theta * Q - reinfections - rates.mu * R,
        ]
    )


def siqr_rhs(params: ModelParams, t: float, y) -> np.ndarray:
    """Time derivative (dS, dI, dQ, dR) at state y.

    The field is autonomous; t is accepted for solver compatibility.
    Non-finite inputs propagate to the output unchanged in kind.
    """
    if isinstance(y, StateVector):
        y = y.as_array()
    return siqr_field(effective_rates(params), np.asarray(y, dtype=float))


def make_rhs(params: ModelParams):
    """Right-hand side closure with the powered rates precomputed."""
    rates = effective_rates(params)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return siqr_field(rates, y)

    return rhs


def default_initial_state() -> StateVector:
    """Baseline initial densities used by the bundled scenarios."""
    return StateVector.initial(153.0, 138.0, 68.0, 20.0)
