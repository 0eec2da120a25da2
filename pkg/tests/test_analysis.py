"""Equilibrium, reproduction number, stability, and sensitivity checks.

Oracles: direct substitution of the baseline rates (independent scalar
arithmetic), the closed form as cross-check for the next-generation
route, and central finite differences for the sensitivity indices.
"""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from fracepi.analysis import (
    VERDICT_STABLE,
    VERDICT_UNSTABLE,
    classify_dfe,
    dfe_eigenvalues,
    disease_free_equilibrium,
    r0_closed_form,
    r0_ngm,
    sensitivity_indices,
)
from fracepi.errors import BoundaryCase, ZeroDeathRate, ZeroRate
from fracepi.model import ModelParams, siqr_rhs

RATE = st.floats(1e-5, 1.0)  # log-ish range spanning the plausible rates


def random_params(rng: np.random.Generator) -> ModelParams:
    lam, beta, sigma, theta, mu = 10.0 ** rng.uniform(-5.0, 0.0, size=5)
    return ModelParams(
        lam=lam, beta=beta, sigma=sigma, theta=theta, mu=mu,
        p=rng.uniform(0.0, 1.0 - 1e-9), alpha=rng.uniform(0.3, 1.0),
    )


# -------------------------------------------------------------- equilibrium

def test_disease_free_state_from_baseline_rates():
    dfe = disease_free_equilibrium(ModelParams())
    assert math.isclose(dfe.S, 0.145 / 4.10e-4, rel_tol=1e-12)
    assert dfe.I == 0.0 and dfe.Q == 0.0 and dfe.R == 0.0


def test_disease_free_state_unit_ratio():
    dfe = disease_free_equilibrium(ModelParams(lam=0.3, mu=0.3))
    assert dfe.S == 1.0


@pytest.mark.parametrize("p", [0.0, 0.37, 0.9])
def test_field_vanishes_at_disease_free_state(p):
    params = ModelParams(p=p)
    point = disease_free_equilibrium(params)
    np.testing.assert_allclose(siqr_rhs(params, 0.0, point), np.zeros(4), atol=1e-12)


def test_zero_death_rate_refused_everywhere():
    params = ModelParams(mu=0.0)
    for op in (disease_free_equilibrium, r0_closed_form, r0_ngm, dfe_eigenvalues, classify_dfe):
        with pytest.raises(ZeroDeathRate):
            op(params)


# ------------------------------------------------------ reproduction number

def test_r0_baseline_substitution():
    expected = (3.80e-4 * 1.45e-1) / (4.10e-4 * (1.69e-2 + 4.10e-4))
    r0 = r0_closed_form(ModelParams())
    assert math.isclose(r0, expected, rel_tol=1e-12)
    assert 7.7 <= r0 <= 7.9


def test_r0_zero_without_transmission():
    assert r0_closed_form(ModelParams(beta=0.0)) == 0.0
    assert r0_ngm(ModelParams(beta=0.0)) == 0.0


def test_r0_routes_agree_at_fractional_order():
    params = ModelParams(alpha=0.96)
    closed = r0_closed_form(params)
    assert math.isclose(r0_ngm(params), closed, rel_tol=1e-12)


def test_r0_ngm_specializes_without_isolation():
    params = ModelParams(sigma=0.0)
    expected = (3.80e-4 * 1.45e-1) / (4.10e-4 ** 2)
    assert math.isclose(r0_ngm(params), expected, rel_tol=1e-12)


@settings(max_examples=200)
@given(lam=RATE, beta=RATE, sigma=RATE, theta=RATE, mu=RATE, alpha=st.floats(0.3, 1.0))
def test_r0_routes_agree_over_random_rates(lam, beta, sigma, theta, mu, alpha):
    params = ModelParams(lam=lam, beta=beta, sigma=sigma, theta=theta, mu=mu, alpha=alpha)
    closed = r0_closed_form(params)
    assert abs(r0_ngm(params) - closed) <= 1e-12 * closed


# ---------------------------------------------------------------- stability

def test_eigenvalues_from_baseline_rates():
    eigs = dfe_eigenvalues(ModelParams())
    expected_first = -(1.81e-2) - 4.10e-4
    expected_second = (3.80e-4 * 1.45e-1 - 4.10e-4 ** 2 - 4.10e-4 * 1.69e-2) / 4.10e-4
    assert math.isclose(eigs[0], expected_first, rel_tol=1e-12)
    assert math.isclose(eigs[1], expected_second, rel_tol=1e-12)
    assert eigs[2] == eigs[3] == -4.10e-4
    assert math.isclose(eigs[1], 0.11708024390243901, rel_tol=1e-12)


def test_eigenvalue_sum_of_rates():
    eigs = dfe_eigenvalues(ModelParams(theta=0.5, mu=0.5))
    assert eigs[0] == -1.0


def test_unstable_verdict_at_baseline():
    report = classify_dfe(ModelParams())
    assert report.verdict == VERDICT_UNSTABLE
    assert report.r0 > 1.0
    assert report.dfe.I == 0.0
    assert max(report.eigenvalues) > 0.0


def test_stable_verdict_with_reduced_contact():
    report = classify_dfe(ModelParams(beta=3.80e-5))
    assert report.verdict == VERDICT_STABLE
    assert math.isclose(report.r0, 0.7763734483098731, rel_tol=1e-12)
    assert max(report.eigenvalues) < 0.0


def test_stable_verdict_without_transmission():
    report = classify_dfe(ModelParams(beta=0.0))
    assert report.verdict == VERDICT_STABLE
    assert all(e < 0.0 for e in report.eigenvalues)


def test_boundary_reproduction_number_refused():
    params = ModelParams()
    beta_critical = params.mu * (params.sigma + params.mu) / params.lam
    with pytest.raises(BoundaryCase):
        classify_dfe(ModelParams(beta=beta_critical))


def test_verdict_triangle_over_random_draws():
    rng = np.random.default_rng(20240817)
    checked = 0
    while checked < 1000:
        params = random_params(rng)
        r0 = r0_closed_form(params)
        if abs(r0 - 1.0) < 1e-6:
            continue
        eigs = dfe_eigenvalues(params)
        report = classify_dfe(params)
        assert (max(eigs) > 0.0) == (r0 > 1.0)
        assert (report.verdict == VERDICT_UNSTABLE) == (r0 > 1.0)
        checked += 1


def test_stability_report_serialization():
    payload = classify_dfe(ModelParams()).to_dict()
    assert set(payload) == {"dfe", "r0", "eigenvalues", "verdict"}
    assert payload["dfe"]["I"] == 0.0
    assert len(payload["eigenvalues"]) == 4


# -------------------------------------------------------------- sensitivity

def test_sensitivity_indices_baseline_values():
    report = sensitivity_indices(ModelParams())
    assert report.gamma_lambda == 1.0
    assert report.gamma_beta == 1.0
    expected_sigma = -1.69e-2 / (1.69e-2 + 4.10e-4)
    assert math.isclose(report.gamma_sigma, expected_sigma, rel_tol=1e-12)
    rounded = (round(report.gamma_lambda, 2), round(report.gamma_beta, 2), round(report.gamma_sigma, 2))
    assert rounded == (1.0, 1.0, -0.98)


def test_sensitivity_finite_difference_agreement():
    report = sensitivity_indices(ModelParams())
    assert [name for name, _, _ in report.finite_difference_check] == ["lambda", "beta", "sigma"]
    for _, analytic, numeric in report.finite_difference_check:
        assert abs(analytic - numeric) < 1e-6


def test_sensitivity_requires_positive_rates():
    with pytest.raises(ZeroRate):
        sensitivity_indices(ModelParams(sigma=0.0))
    with pytest.raises(ZeroRate):
        sensitivity_indices(ModelParams(mu=0.0))


def test_sigma_index_limit_small_death_rate():
    report = sensitivity_indices(ModelParams(mu=1e-10))
    assert abs(report.gamma_sigma - (-1.0)) < 1e-6


def test_recruitment_and_contact_indices_parameter_free():
    rng = np.random.default_rng(7)
    for _ in range(100):
        params = random_params(rng)
        if params.sigma == 0.0 or params.mu == 0.0:
            continue
        report = sensitivity_indices(params)
        assert report.gamma_lambda == 1.0
        assert report.gamma_beta == 1.0


def test_sigma_index_depends_on_sigma():
    low = sensitivity_indices(ModelParams(sigma=1.69e-2)).gamma_sigma
    high = sensitivity_indices(ModelParams(sigma=3.19e-2)).gamma_sigma
    assert low != high


def test_sensitivity_report_serialization():
    payload = sensitivity_indices(ModelParams()).to_dict()
    assert set(payload) == {"gamma_lambda", "gamma_beta", "gamma_sigma", "finite_difference_check"}
    assert len(payload["finite_difference_check"]) == 3
    assert payload["finite_difference_check"][0][0] == "lambda"


@settings(max_examples=200)
@given(lam=RATE, beta=RATE, sigma=RATE, theta=RATE, mu=RATE, alpha=st.floats(0.3, 1.0))
def test_verdict_triangle_property(lam, beta, sigma, theta, mu, alpha):
    params = ModelParams(lam=lam, beta=beta, sigma=sigma, theta=theta, mu=mu, alpha=alpha)
    r0 = r0_closed_form(params)
    assume(abs(r0 - 1.0) > 1e-6)
    eigs = dfe_eigenvalues(params)
    report = classify_dfe(params)
    assert (max(eigs) > 0.0) == (r0 > 1.0)
    assert (report.verdict == VERDICT_UNSTABLE) == (r0 > 1.0)
