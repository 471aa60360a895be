from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbtriple.ideals import (
    SingularSpectrum,
    fit_decay,
    lambda_independence_test,
    local_random_unitary,
    power_law_matrix,
    product_law_test,
    random_unitary,
    schatten_sum,
    sobolev_embedding_svals,
)
from qbtriple.numerics import singular_values


def test_exact_power_law_exponent():
    k = np.arange(1, 201, dtype=float)
    fit = fit_decay(k**-3.0)
    assert fit.exponent == pytest.approx(3.0, abs=1e-10)
    assert fit.stderr <= 1e-10


def test_oscillating_power_law_exponent():
    k = np.arange(1, 201, dtype=float)
    fit = fit_decay(k**-2.0 * (1 + 0.1 * np.sin(k)))
    assert 1.9 <= fit.exponent <= 2.1


def test_fit_requires_enough_points():
    with pytest.raises(ValueError):
        fit_decay(np.arange(1, 8, dtype=float) ** -1.0)


def test_fit_ignores_values_below_floor():
    k = np.arange(1, 101, dtype=float)
    v = k**-2.0
    v[60:] = 1e-30
    fit = fit_decay(v)
    assert fit.window[1] == 60
    assert fit.exponent == pytest.approx(2.0, abs=1e-10)


def test_spectrum_sorted_and_validated():
    s = SingularSpectrum([0.1, 1.0, 0.5])
    assert list(s.values) == [1.0, 0.5, 0.1]
    assert list(s.k) == [1, 2, 3]
    with pytest.raises(ValueError):
        SingularSpectrum([1.0, -0.1])
    with pytest.raises(ValueError):
        SingularSpectrum([1.0, np.nan])


def test_schatten_zeta_two():
    k = np.arange(1, 1001, dtype=float)
    res = schatten_sum(1.0 / k, 2.0)
    assert res.converges
    assert res.partial_sum == pytest.approx(np.sum(1.0 / k**2), rel=1e-14)
    # the modeled tail closes most of the gap to ζ(2)
    assert abs(res.partial_sum + res.tail_estimate - np.pi**2 / 6) <= 1e-5


def test_schatten_divergent_verdict():
    k = np.arange(1, 1001, dtype=float)
    res = schatten_sum(1.0 / k, 0.9)
    assert not res.converges and res.tail_estimate == np.inf


def test_schatten_finite_rank_is_exact():
    res = schatten_sum([3.0, 2.0, 1.0, 0.0, 0.0], 1.0)
    assert res.converges and res.partial_sum == 6.0 and res.exponent is None


def test_schatten_rejects_nonpositive_p():
    with pytest.raises(ValueError):
        schatten_sum([1.0], 0.0)


def test_random_unitaries_are_unitary():
    rng = np.random.default_rng(0)
    for U in (random_unitary(30, rng), local_random_unitary(30, rng)):
        assert np.max(np.abs(U.conj().T @ U - np.eye(30))) <= 1e-12


def test_unitary_factor_preserves_singular_values():
    rng = np.random.default_rng(1)
    A = power_law_matrix(1.5, 60, rng)
    U = random_unitary(60, rng)
    assert np.allclose(singular_values(A @ U), singular_values(A), atol=1e-13)
    assert np.allclose(singular_values(A), np.arange(1, 61) ** -1.5, atol=1e-13)


def test_aligned_diagonal_product_is_exact():
    A = power_law_matrix(1.0, 100)
    B = power_law_matrix(0.5, 100)
    fit = fit_decay(singular_values(A @ B), (10, 80))
    assert fit.exponent == pytest.approx(1.5, abs=1e-10)


@pytest.mark.parametrize("r, s", [(0.5, 0.5), (1.0, 0.5), (1.5, 1.0)])
def test_product_law_local_ensemble(r, s):
    rep = product_law_test(r, s, n_trials=10, seed=3)
    assert rep.inequality_holds
    assert rep.min_exponent >= r + s - 0.3
    assert rep.passed


def test_product_law_haar_ensemble_loses_half_an_order():
    # dense Haar coupling has no operator limit; the fitted slope sits near r + s - 1/2
    rep = product_law_test(1.0, 1.0, n_trials=5, seed=0, ensemble="haar")
    assert rep.inequality_holds
    assert 1.2 <= float(np.mean(rep.exponents)) <= 1.8


def test_product_law_rejects_unknown_ensemble():
    with pytest.raises(ValueError):
        product_law_test(1.0, 1.0, n_trials=1, ensemble="gaussian")


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_sobolev_embedding_exponent(t):
    fit = fit_decay(sobolev_embedding_svals(t), (20, 400))
    assert fit.exponent == pytest.approx(t, abs=0.02)


def test_sobolev_order_zero_is_not_compact():
    s = sobolev_embedding_svals(0.0)
    assert np.all(s.values == 1.0)


def test_lambda_independence_identical_spectra():
    s = SingularSpectrum(np.arange(1, 101, dtype=float) ** -1.5)
    rep = lambda_independence_test(s, s)
    assert rep.difference == 0.0 and rep.passed


def test_compact_sandwich_keeps_exponent():
    # E S F with E, F bounded and boundedly invertible keeps the decay class of S
    rng = np.random.default_rng(7)
    n = 120
    S = power_law_matrix(2.0, n)
    E = np.eye(n) + 0.3 * local_random_unitary(n, rng)
    F = np.eye(n) + 0.3 * local_random_unitary(n, rng)
    fit = fit_decay(singular_values(E @ S @ F), (10, 80))
    assert fit.exponent == pytest.approx(2.0, abs=0.3)


@pytest.mark.parametrize("p", [0.5, 1.0, 2.0])
def test_schatten_membership_surrogate(p):
    # k^{-r} with r slightly above 1/p lies in S_p
    r = 1.0 / p + 0.1
    k = np.arange(1, 2001, dtype=float)
    res = schatten_sum(k**-r, p)
    assert res.converges and res.exponent >= 1.0 / p - 0.2


@settings(max_examples=30, deadline=None)
@given(st.floats(0.2, 5.0), st.floats(0.1, 10.0))
def test_fit_recovers_any_power_law(r, c):
    k = np.arange(1, 101, dtype=float)
    assert fit_decay(c * k**-r).exponent == pytest.approx(r, abs=1e-9)
