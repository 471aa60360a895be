from __future__ import annotations

import numpy as np
import pytest
import scipy.special as sp
from scipy.integrate import quad

from qbtriple import delta2d
from qbtriple.errors import EigenvalueCollision
from qbtriple.numerics import bessel_I, bessel_K
from qbtriple.triple import green_residual, green_tolerance, weyl


@pytest.fixture(scope="module")
def modes():
    return delta2d.interface_modes(256, -1.0)


@pytest.mark.parametrize("k", [0, 1, 7, 60])
def test_tilde_weyl_is_product_of_bessel_functions(k):
    _, _, mt, _ = delta2d.weyl_values(k, -1.0)
    ref = bessel_I(k, 1.0).value * bessel_K(k, 1.0).value * np.exp(bessel_I(k, 1.0).exponent
                                                                  + bessel_K(k, 1.0).exponent)
    assert mt[k] == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("k", [0, 1, 7, 60])
@pytest.mark.parametrize("lam", [-1.0, -4.0 + 1.0j])
def test_weyl_values_against_scipy(k, lam):
    s = np.sqrt(-complex(lam))
    m_i, m_e, mt, mh = delta2d.weyl_values(k, lam)
    dI = sp.ivp(k, s)
    dK = sp.kvp(k, s)
    assert m_i[k] == pytest.approx(sp.iv(k, s) / (s * dI), rel=1e-7)
    assert m_e[k] == pytest.approx(-sp.kv(k, s) / (s * dK), rel=1e-7)
    assert mt[k] == pytest.approx(sp.iv(k, s) * sp.kv(k, s), rel=1e-7)
    assert mh[k] == pytest.approx(m_i[k] + m_e[k], rel=1e-14)


def test_tilde_weyl_large_k_asymptotics(modes):
    k = np.arange(1, 257)
    assert abs(2 * k[-1] * modes.tilde_m[-1] - 1.0) <= 1e-4
    assert np.all(np.abs(2 * k * modes.tilde_m[1:] - 1.0)[1:] <= np.abs(2 * k * modes.tilde_m[1:] - 1.0)[:-1])


@pytest.mark.parametrize("k", [0, 3, 12])
def test_exterior_integral_against_scipy(modes, k):
    s = 1.0
    K1 = sp.kve(k, s)
    ref, _ = quad(lambda r: (sp.kve(k, s * r) * np.exp(-(s * r - s)) / K1) ** 2 * r, 1.0, delta2d.DEFAULT_R,
                  epsabs=0, epsrel=1e-12, limit=400)
    assert modes.int_e[k] == pytest.approx(ref, rel=1e-9)
    assert modes.tail_e[k] <= 1e-20


def test_truncation_radius_insensitive():
    a = delta2d.interface_modes(16, -1.0, R=15.0)
    b = delta2d.interface_modes(16, -1.0, R=30.0)
    assert np.max(np.abs(a.int_e - b.int_e) / b.int_e) <= np.exp(-15.0)


@pytest.mark.parametrize("pair", sorted(delta2d.PAIRS))
def test_chain_exponents(pair, modes):
    rep = delta2d.chain_svals(pair, modes=modes)
    assert abs(rep.fit.exponent - rep.target) <= 0.3


def test_chain_consistency(modes):
    # δ' vs Neumann decays faster than δ' vs free: the chain through A_N,i ⊕ A_N,e
    to_n = delta2d.chain_svals("delta_prime_vs_neumann", modes=modes).fit.exponent
    to_free = delta2d.chain_svals("delta_prime_vs_free", modes=modes).fit.exponent
    assert to_n >= to_free


def test_zero_strength_delta_is_free(modes):
    data = delta2d.realize_delta(0.0, modes=modes)
    assert np.all(data.coefficient == 0)


def test_zero_strength_delta_prime_rejected(modes):
    with pytest.raises(ValueError):
        delta2d.realize_delta_prime(0.0, modes=modes)


def test_collision_reports_mode():
    lam = delta2d.bound_states("delta", 5.0, 2)[0]
    with pytest.raises(EigenvalueCollision) as exc:
        delta2d.realize_delta(5.0, lam=lam, K=8)
    assert exc.value.mode == 2


def test_delta_bound_states_attractive_sign():
    lam0 = delta2d.bound_states("delta", 5.0, 0)
    lam2 = delta2d.bound_states("delta", 5.0, 2)
    assert lam0 == pytest.approx([-6.558010], abs=1e-5)
    assert lam2 == pytest.approx([-2.072459], abs=1e-5)
    # mode k binds iff α > 2k
    assert delta2d.bound_states("delta", 5.0, 3).size == 0
    assert delta2d.bound_states("delta", -5.0, 0).size == 0
    # independent check: 1 = α I0(s) K0(s)
    s = np.sqrt(-lam0[0])
    assert 5.0 * sp.iv(0, s) * sp.kv(0, s) == pytest.approx(1.0, rel=1e-10)


def test_delta_prime_bound_states():
    lam = delta2d.bound_states("delta_prime", 1.0, 0)
    assert lam == pytest.approx([-4.843389], abs=1e-5)
    assert delta2d.bound_states("delta_prime", -1.0, 0).size == 0
    s = np.sqrt(-lam[0])
    mh = sp.iv(0, s) / (s * sp.iv(1, s)) + sp.kv(0, s) / (s * sp.kv(1, s))
    assert mh == pytest.approx(1.0, rel=1e-10)


def test_unknown_pair_rejected(modes):
    with pytest.raises(ValueError):
        delta2d.per_mode_svals("nope", modes)


def _relative_weyl_error(builder, k, n_int, which):
    t = builder(k, n_int, n_int * 160 // 256)
    ref = delta2d.weyl_values(k, -1.0)[which][k]
    return abs(weyl(t, -1.0).M[0, 0] - ref) / abs(ref)


@pytest.mark.parametrize("builder, which", [(delta2d.tilde_mode_triple, 2), (delta2d.hat_mode_triple, 3)])
@pytest.mark.parametrize("k", [0, 2, 5])
def test_discrete_interface_triples(builder, which, k):
    t = builder(k)
    assert green_residual(t) <= green_tolerance(t)
    e1 = _relative_weyl_error(builder, k, 128, which)
    e2 = _relative_weyl_error(builder, k, 256, which)
    assert e2 <= 2e-4
    assert 3.5 <= e1 / e2 <= 4.5
