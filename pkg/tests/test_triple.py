from __future__ import annotations

import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings
from hypothesis import strategies as st

from qbtriple import disk2d, sl1d
from qbtriple.delta2d import hat_mode_triple, tilde_mode_triple
from qbtriple.errors import EigenvalueCollision, IntervalSplitRequired, NotHermitianError
from qbtriple.triple import (
    BoundaryParameter,
    DiscreteTriple,
    dissipativity_check,
    eigenvalues_via_weyl,
    gamma_field,
    green_residual,
    green_tolerance,
    krein_correction,
    krein_defect,
    krein_resolvent,
    nevanlinna_check,
    realize,
    resolvent_identity_defect,
    synthetic_triple,
    trace_formula_check,
    weyl,
    weyl_derivative,
    weyl_derivative_defect,
    weyl_difference_defect,
)


@pytest.fixture(scope="module")
def interval():
    return sl1d.build_triple(sl1d.IntervalModel(400))


# ---------------------------------------------------------------- construction


def test_trivial_triple_green_identity():
    t = DiscreteTriple(np.zeros((1, 1)), np.eye(1), np.eye(1), np.zeros((1, 1)), np.zeros((1, 1)))
    assert green_residual(t) == 0.0


def test_interval_triple_green_identity(interval):
    assert green_residual(interval) <= green_tolerance(interval)


def test_perturbed_g1_breaks_green_identity(interval):
    G1 = interval.G1.copy()
    G1[0, 1] = 1e-3
    t = DiscreteTriple(interval.T_act, interval.W, interval.Wb, interval.G0, G1)
    assert green_residual(t) > 1e-4


def test_triple_rejects_non_hermitian_gram():
    W = np.array([[1.0, 0.5], [0.0, 1.0]])
    with pytest.raises(NotHermitianError):
        DiscreteTriple(np.zeros((2, 2)), W, np.eye(1), np.zeros((1, 2)), np.zeros((1, 2)))


def test_triple_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        DiscreteTriple(np.zeros((2, 2)), np.eye(2), np.eye(1), np.zeros((1, 3)), np.zeros((1, 2)))


def test_triple_is_immutable(interval):
    with pytest.raises(ValueError):
        interval.W[0, 0] = 2.0


@pytest.mark.parametrize("seed", range(4))
def test_synthetic_triples_satisfy_green_identity(seed):
    t = synthetic_triple(10, 3, seed)
    assert green_residual(t) <= green_tolerance(t)
    assert t.stacked_rank() == 2 * t.m
    assert np.isfinite(t.constrained_condition(-1.0))


# ---------------------------------------------------------------- γ-field and Weyl function


def test_gamma_boundary_values_unit_flux(interval):
    # -f'' = -f, f'(0) = -1 (outward flux 1), f'(1) = 0: f = cosh(1 - x) / sinh(1)
    f = gamma_field(interval, -1.0, np.array([1.0, 0.0]))
    assert f[0] == pytest.approx(1.0 / np.tanh(1.0), abs=1e-5)
    assert f[-1] == pytest.approx(1.0 / np.sinh(1.0), abs=1e-5)
    x = np.linspace(0.0, 1.0, 400)
    assert np.max(np.abs(f - np.cosh(1 - x) / np.sinh(1.0))) <= 1e-5


def test_gamma_zero_data(interval):
    assert np.all(gamma_field(interval, -1.0, np.zeros(2)) == 0)


def test_weyl_sample_residuals(interval):
    ws = weyl(interval, -1.0 + 0.5j)
    assert ws.flux_residual(interval) <= 1e-10
    assert ws.interior_residual(interval) <= 1e-9


@pytest.mark.parametrize("lam", [-1.0, -4.0, -1.0 + 1.0j])
def test_interval_weyl_matches_closed_form(interval, lam):
    M = weyl(interval, lam).M
    assert np.max(np.abs(M - sl1d.weyl_exact(lam))) <= 2e-5


def test_interval_weyl_converges_second_order():
    errs = []
    for n in (101, 201, 401):
        M = weyl(sl1d.build_triple(sl1d.IntervalModel(n)), -1.0).M
        errs.append(np.max(np.abs(M - sl1d.weyl_exact(-1.0))))
    for a, b in zip(errs, errs[1:]):
        assert 3.5 <= a / b <= 4.5


def test_weyl_symmetry_real_lambda(interval):
    M = weyl(interval, -2.0).M
    assert np.max(np.abs(M - interval.adjoint_boundary(M))) <= 1e-13


@pytest.mark.parametrize("seed", range(3))
def test_weyl_conjugate_symmetry(seed):
    t = synthetic_triple(8, 2, seed)
    lam = -0.7 + 0.4j
    M = weyl(t, lam).M
    Mc = weyl(t, np.conj(lam)).M
    assert np.max(np.abs(Mc - t.adjoint_boundary(M))) <= 1e-11 * np.max(np.abs(M))


@pytest.mark.parametrize("lam, mu", [(-1.0 + 0.5j, -2.0 - 1.0j), (-0.3, -1.0 + 2.0j)])
def test_weyl_difference_identity(lam, mu):
    for seed in range(3):
        assert weyl_difference_defect(synthetic_triple(10, 3, seed), lam, mu) <= 1e-10


def test_weyl_difference_identity_interval(interval):
    assert weyl_difference_defect(interval, -1.0 - 1.0j, -2.0 + 1.0j) <= 1e-9


def test_weyl_derivative_matches_finite_difference(interval):
    assert weyl_derivative_defect(interval, -1.0) <= 1e-6
    ws = weyl(interval, -1.0, derivative=True)
    assert np.allclose(ws.M_prime, weyl_derivative(interval, -1.0))


def test_resolvent_identity(interval):
    assert resolvent_identity_defect(interval, -1.0 + 0.5j, -2.0) <= 1e-10


def test_empty_boundary():
    t = DiscreteTriple(np.eye(3), np.eye(3), np.zeros((0, 0)), np.zeros((0, 3)), np.zeros((0, 3)))
    assert weyl(t, -1.0).M.shape == (0, 0)
    assert weyl_derivative(t, -1.0).shape == (0, 0)


@pytest.mark.parametrize("seed", range(4))
def test_nevanlinna_sign(seed):
    t = synthetic_triple(8, 2, seed)
    up = nevanlinna_check(t, -0.5 + 0.7j)
    down = nevanlinna_check(t, -0.5 - 0.7j)
    # Im M / Im λ ⪰ 0 on both half planes; Im M itself changes sign
    assert up > 0 and down > 0
    M_up, M_down = weyl(t, -0.5 + 0.7j).M, weyl(t, -0.5 - 0.7j).M
    imag_up = np.linalg.eigvalsh((t.Wb @ M_up - M_up.conj().T @ t.Wb) / 2j)
    imag_down = np.linalg.eigvalsh((t.Wb @ M_down - M_down.conj().T @ t.Wb) / 2j)
    assert imag_up.min() > 0 and imag_down.max() < 0
    assert nevanlinna_check(t, -1.0) is None


def test_collision_with_a0_eigenvalue(interval):
    lam0 = interval.a0_eigenvalues()[0]
    with pytest.raises(EigenvalueCollision) as exc:
        weyl(interval, lam0)
    assert exc.value.nearest == pytest.approx(lam0, abs=1e-12)


# ---------------------------------------------------------------- parameters and realizations


def test_parameter_validation():
    with pytest.raises(ValueError):
        BoundaryParameter(np.zeros((2, 2)), np.array([[1.0, 0.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        BoundaryParameter(np.eye(2), np.eye(3))
    th = BoundaryParameter.operator(np.diag([1.0, 2.0]))
    assert th.is_self_adjoint() and th.m == th.d == 2


def test_pure_multivalued_gives_a0(interval):
    theta = BoundaryParameter.pure_multivalued(2)
    real = realize(interval, theta)
    assert np.allclose(real.eigenvalues()[:5], interval.a0_eigenvalues()[:5], atol=1e-9)
    assert np.max(np.abs(krein_correction(interval, theta, -1.0))) == 0.0


def test_zero_parameter_gives_dirichlet(interval):
    theta = BoundaryParameter.zero(2)
    real = realize(interval, theta)
    ev = real.eigenvalues()
    ref = sl1d.dirichlet_eigenvalues(3)
    assert np.max(np.abs(ev[:3] - ref) / ref) <= 1e-4
    corr = krein_correction(interval, theta, -1.0)
    s = np.linalg.svd(corr, compute_uv=False)
    assert np.sum(s > 1e-10 * s[0]) == 2


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("lam", [-1.0, -1.0 + 1.0j, -2.0 - 0.5j])
def test_krein_formula_synthetic(seed, lam):
    t = synthetic_triple(8, 2, seed)
    rng = np.random.default_rng(seed)
    B = rng.standard_normal((2, 2))
    B = B + B.T
    for theta in (BoundaryParameter.operator(B), BoundaryParameter.inverse_of(B),
                  BoundaryParameter.zero(2)):
        assert krein_defect(t, theta, lam) <= 1e-9


def test_krein_formula_partially_multivalued(interval):
    # X = diag(1, 0), Y = diag(b, 1): Γ1 f_0 = b Γ0 f_0 at x = 0, Neumann at x = 1
    theta = BoundaryParameter(np.diag([1.0, 0.0]), np.diag([0.5, 1.0]))
    assert krein_defect(interval, theta, -1.0 + 0.5j) <= 1e-8


def test_realization_rejects_wrong_dimension(interval):
    with pytest.raises(ValueError):
        realize(interval, BoundaryParameter.zero(3))


def test_self_adjoint_parameter_has_invertible_y_minus_mx(interval):
    theta = BoundaryParameter.operator(np.diag([1.0, -2.0]))
    M = weyl(interval, -1.0 + 1.0j).M
    s = np.linalg.svd(theta.Y - M @ theta.X, compute_uv=False)
    assert s.min() > 1e-10


def test_krein_reports_eigenvalue_of_realization(interval):
    theta = BoundaryParameter.zero(2)
    lam = realize(interval, theta).eigenvalues()[0]
    with pytest.raises(EigenvalueCollision):
        krein_resolvent(interval, theta, lam)


# ---------------------------------------------------------------- eigenvalues via the Weyl function


def test_disk_mode_zero_dirichlet_root():
    t = disk2d.mode_triple(0)
    roots = eigenvalues_via_weyl(t, BoundaryParameter.zero(1), (0.5, 14.0))
    assert roots.shape == (1,)
    assert roots[0] == pytest.approx(2.404825557695773**2, rel=1e-4)
    direct = realize(t, BoundaryParameter.zero(1)).eigenvalues()
    assert np.min(np.abs(direct - roots[0])) <= 1e-9 * (1 + abs(roots[0]))


def test_interval_containing_a0_eigenvalue_requires_split():
    t = disk2d.mode_triple(0)
    with pytest.raises(IntervalSplitRequired) as exc:
        eigenvalues_via_weyl(t, BoundaryParameter.zero(1), (0.5, 20.0))
    assert exc.value.points[0] == pytest.approx(3.8317059702075125**2, rel=1e-3)


def test_weyl_roots_match_direct_eigenvalues_synthetic():
    t = synthetic_triple(8, 2, 1, complex_valued=False)
    theta = BoundaryParameter.operator(np.linalg.solve(t.Wb, np.diag([0.3, -0.7])))
    assert theta.is_self_adjoint(t.Wb)
    direct = np.real(realize(t, theta).eigenvalues())
    ev0 = t.a0_eigenvalues()
    pts = np.concatenate([[direct.min() - 1.0], ev0, [direct.max() + 1.0]])
    found = []
    for a, b in zip(pts, pts[1:]):
        found.extend(eigenvalues_via_weyl(t, theta, (a + 1e-9, b - 1e-9), n_samples=800))
    for x in found:
        assert np.min(np.abs(direct - x)) <= 1e-8 * (1 + abs(x))


# ---------------------------------------------------------------- trace formula


@pytest.mark.parametrize("seed", range(3))
def test_trace_formula_synthetic(seed):
    t = synthetic_triple(8, 2, seed)
    theta = BoundaryParameter.operator(np.diag([1.0, 2.0]))
    tc = trace_formula_check(t, theta, -1.0 + 0.3j)
    assert tc.defect <= 1e-9 * max(1.0, abs(tc.lhs))


def test_trace_formula_interval_dirichlet_neumann():
    tc = sl1d.dirichlet_vs_neumann_trace(sl1d.IntervalModel(400), -1.0)
    assert tc.defect <= 1e-8
    assert tc.lhs.real == pytest.approx(-1.0, abs=1e-4)


# ---------------------------------------------------------------- dissipative parameters


def test_dissipative_parameter_upper_half_plane(interval):
    theta = BoundaryParameter.operator((1.0 + 1.0j) * np.eye(2))
    assert theta.is_dissipative() and not theta.is_accumulative()
    rep = dissipativity_check(interval, theta)
    assert rep.passed and rep.min_imag >= -1e-9 and rep.krein_defect <= 1e-8


def test_conjugate_parameter_is_accumulative(interval):
    theta = BoundaryParameter.operator((1.0 + 1.0j) * np.eye(2)).adjoint()
    assert theta.is_accumulative()
    rep = dissipativity_check(interval, theta)
    assert rep.passed and rep.max_imag <= 1e-9


def test_symmetric_parameter_rejected_by_neither_check(interval):
    theta = BoundaryParameter.operator(np.array([[1.0, 1j], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        dissipativity_check(interval, theta)


# ---------------------------------------------------------------- strong rows of the mode triples


@pytest.mark.parametrize("builder", [tilde_mode_triple, hat_mode_triple])
def test_mode_triple_strong_rows_are_exact(builder):
    t = builder(1)
    assert green_residual(t) <= green_tolerance(t)
    assert np.isfinite(t.constrained_condition(-1.0))
    ws = weyl(t, -1.0)
    scale = np.max(np.abs(t.W @ t.T_act)) * np.max(np.abs(ws.gamma))
    assert ws.interior_residual(t) <= 1e-12 * scale


def test_row_selector_shape_checked():
    with pytest.raises(ValueError):
        DiscreteTriple(np.zeros((3, 3)), np.eye(3), np.eye(1), np.zeros((1, 3)), np.zeros((1, 3)),
                       interior_rows=np.ones((2, 4)))


# ---------------------------------------------------------------- properties


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.floats(-3.0, -0.1), st.floats(-2.0, 2.0))
def test_krein_property(seed, re, im):
    t = synthetic_triple(6, 2, seed)
    rng = np.random.default_rng(seed)
    B = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    theta = BoundaryParameter.operator(B + B.conj().T)
    lam = complex(re, im)
    assert krein_defect(t, theta, lam) <= 1e-8


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_realization_selfadjoint_property(seed):
    t = synthetic_triple(7, 2, seed)
    rng = np.random.default_rng(seed)
    H = rng.standard_normal((2, 2))
    # self-adjoint in the Wb inner product: Wb B Hermitian
    B = np.linalg.solve(t.Wb, H + H.T)
    real = realize(t, BoundaryParameter.operator(B))
    assert real.sa_check
    ev = sla.eigvals(real.K, real.Wr)
    assert np.max(np.abs(ev.imag)) <= 1e-9 * max(1.0, np.max(np.abs(ev)))
