"""Modified Bessel functions I_k and K_k of integer order.

Everything is built from three stable primitives:

* ``I`` ratios ``rho_k = I_{k+1}/I_k`` by backward recurrence (the continued
  fraction ``rho_k = 1 / (2(k+1)/z + rho_{k+1})``), started far above the
  largest order requested;
* ``K`` seeds ``K_0, K_1`` from the trapezoid rule applied to
  ``e^z K_nu(z) = ∫_0^∞ exp(-z (cosh t - 1)) cosh(nu t) dt``, which converges
  geometrically because the integrand is analytic in a strip;
* ``K`` ratios ``q_k = K_{k+1}/K_k`` by the (stable) upward recurrence
  ``q_k = 1/q_{k-1} + 2k/z``.

Values are assembled in logarithmic form so that ``I_512(1e-6)`` or
``K_512(1e-6)`` neither underflow nor overflow.

Switch point: for ``x <= SERIES_SWITCH`` the reduced ascending series
``Ĩ_k(x) = Σ_j (x²/4)^j k! / (j! (j+k)!)`` gives ``I_k`` directly; above it
``I_0`` is fixed by the Miller normalization ``e^x = I_0 + 2 Σ_{n≥1} I_n``
applied to the downward ratio sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lgamma

import numpy as np

SERIES_SWITCH = 12.0
_LOG_OVERFLOW = 600.0


@dataclass(frozen=True)
class BesselEval:
    """Scaled value: the function equals ``value * exp(exponent)``, likewise ``deriv``."""

    value: float
    deriv: float
    exponent: float = 0.0

    @property
    def true_value(self) -> float:
        return float(self.value * np.exp(self.exponent))

    @property
    def true_deriv(self) -> float:
        return float(self.deriv * np.exp(self.exponent))

    @property
    def log_value(self) -> float:
        return float(np.log(abs(self.value)) + self.exponent)


def _scaled(log_v: float, value_ratio: float) -> BesselEval:
    # value_ratio = f'(x) / f(x)
    if abs(log_v) < _LOG_OVERFLOW:
        v = float(np.exp(log_v))
        return BesselEval(v, v * value_ratio, 0.0)
    return BesselEval(1.0, value_ratio, float(log_v))


def _start_order(kmax: int, absz: float) -> int:
    base = max(kmax, absz)
    return int(base + 40 + 12 * np.sqrt(base + 1))


def bessel_i_ratios(kmax: int, z) -> np.ndarray:
    """``rho_k = I_{k+1}(z)/I_k(z)`` for k = 0..kmax; shape ``(kmax+1,) + z.shape``.

    Valid for complex ``z`` with ``Re z >= 0`` (and any real ``z > 0``).
    """
    z = np.asarray(z)
    dtype = complex if np.iscomplexobj(z) else float
    n_top = _start_order(kmax, float(np.max(np.abs(z))) if z.size else 0.0)
    out = np.empty((kmax + 1,) + z.shape, dtype=dtype)
    rho = np.zeros(z.shape, dtype=dtype)
    two_over_z = 2.0 / z
    for n in range(n_top, -1, -1):
        rho = 1.0 / ((n + 1) * two_over_z + rho)
        if n <= kmax:
            out[n] = rho
    return out


def bessel_i_ratio(k: int, z):
    return bessel_i_ratios(k, z)[k]


def reduced_i_series(k: int, z, tol: float = 1e-17, max_terms: int = 2000):
    """Reduced series ``Ĩ_k(z) = I_k(z) k! / (z/2)^k``; entire, ``Ĩ_k(0) = 1``.

    Intended for moderate ``|z|`` (the terms are positive for real z; for
    complex z with ``|z| <= 20`` the cancellation is harmless).
    """
    z = np.asarray(z)
    w = 0.25 * z * z
    term = np.ones_like(w, dtype=complex if np.iscomplexobj(z) else float)
    total = term.copy()
    for j in range(1, max_terms):
        term = term * w / (j * (j + k))
        total = total + term
        if np.all(np.abs(term) <= tol * np.abs(total)):
            break
    return total


def _log_i0_large(x: float) -> tuple[float, np.ndarray]:
    """Miller normalization: log I_0(x) and the ratio sequence for real x."""
    n_top = _start_order(0, x)
    rhos = bessel_i_ratios(n_top - 1, np.float64(x))
    log_prod = np.concatenate([[0.0], np.cumsum(np.log(rhos))])
    # e^x = I_0 (1 + 2 Σ_{n>=1} I_n/I_0); shift by x to stay in range
    terms = np.exp(log_prod[1:] - log_prod.max())
    s = np.exp(-log_prod.max()) + 2.0 * terms.sum()
    return x - np.log(s) - log_prod.max(), rhos


def log_bessel_i(k: int, x: float) -> tuple[float, float]:
    """``(log I_k(x), I_k'(x)/I_k(x))`` for real ``x > 0``."""
    if x <= 0:
        raise ValueError("bessel_I needs x > 0")
    rho_k = float(bessel_i_ratio(k, np.float64(x)))
    dlog = rho_k + k / x
    if x <= SERIES_SWITCH:
        log_v = k * np.log(0.5 * x) - lgamma(k + 1) + np.log(float(reduced_i_series(k, np.float64(x))))
        return float(log_v), float(dlog)
    log_i0, _ = _log_i0_large(x)
    rhos = bessel_i_ratios(max(k - 1, 0), np.float64(x))
    log_v = log_i0 + (np.sum(np.log(rhos[:k])) if k > 0 else 0.0)
    return float(log_v), float(dlog)


def bessel_I(k: int, x: float) -> BesselEval:
    """Modified Bessel function ``I_k(x)`` and its derivative (scaled if huge)."""
    _check_args(k, x)
    log_v, dlog = log_bessel_i(k, float(x))
    return _scaled(log_v, dlog)


def _k_seed_scaled(nu: int, z, h: float = 0.05):
    """``e^z K_nu(z)`` by the trapezoid rule on the cosh integral (Re z > 0)."""
    z = np.asarray(z)
    zmin = float(np.min(np.real(z)))
    if zmin <= 0:
        raise ValueError("K seeds need Re z > 0")
    # integrand < e^{-45} beyond t_max
    t_max = np.arccosh(1.0 + (45.0 + nu * 40.0) / zmin) + 1.0
    t = np.arange(0.0, t_max + h, h)
    w = np.full(t.shape, h)
    w[0] = 0.5 * h
    expo = -np.multiply.outer(z, np.cosh(t) - 1.0)
    vals = np.exp(expo) * np.cosh(nu * t)
    return vals @ w


def bessel_k_ratios(kmax: int, z) -> np.ndarray:
    """``q_k = K_{k+1}(z)/K_k(z)`` for k = 0..kmax (upward recurrence)."""
    z = np.asarray(z)
    k0 = _k_seed_scaled(0, z)
    k1 = _k_seed_scaled(1, z)
    q = k1 / k0
    out = np.empty((kmax + 1,) + z.shape, dtype=q.dtype)
    out[0] = q
    for k in range(1, kmax + 1):
        q = 1.0 / q + 2.0 * k / z
        out[k] = q
    return out


def log_bessel_k0(z):
    """``log K_0(z)`` (principal branch)."""
    z = np.asarray(z)
    return np.log(_k_seed_scaled(0, z)) - z


def log_bessel_k(k: int, x: float) -> tuple[float, float]:
    """``(log K_k(x), K_k'(x)/K_k(x))`` for real ``x > 0``."""
    if x <= 0:
        raise ValueError("bessel_K needs x > 0")
    qs = bessel_k_ratios(k, np.float64(x))
    log_v = float(log_bessel_k0(np.float64(x))) + float(np.sum(np.log(qs[:k])))
    return log_v, float(k / x - qs[k])


def bessel_K(k: int, x: float) -> BesselEval:
    """Modified Bessel function ``K_k(x)`` and its derivative (scaled if huge)."""
    _check_args(k, x)
    log_v, dlog = log_bessel_k(k, float(x))
    return _scaled(log_v, dlog)


def _check_args(k: int, x: float) -> None:
    if int(k) != k or k < 0:
        raise ValueError("order k must be a nonnegative integer")
    if not np.isfinite(x) or x <= 0:
        raise ValueError("argument x must be positive and finite")


def wronskian_IK(k: int, x: float) -> float:
    """``I_k K_k' - I_k' K_k``, which equals ``-1/x`` exactly."""
    a = bessel_I(k, x)
    b = bessel_K(k, x)
    scale = np.exp(a.exponent + b.exponent)
    return float((a.value * b.deriv - a.deriv * b.value) * scale)
