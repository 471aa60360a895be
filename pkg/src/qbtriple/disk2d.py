"""``-Δ`` on the unit disk, decomposed into Fourier modes ``e^{ikφ}``.

For mode ``k`` and ``s = sqrt(-λ)`` the λ-solution regular at the origin is
``I_k(s r)``.  With flux data ``∂_r u(1) = 1`` (the outward normal derivative
on the circle) the solution is

    u_k(r) = m_k(λ) I_k(s r) / I_k(s),      m_k(λ) = I_k(s) / (s I_k'(s)),

and ``m_k`` is the eigenvalue of the Neumann-to-Dirichlet map on that mode.
Writing ``ρ_k = I_{k+1}/I_k`` one has ``s I_k'/I_k = k + s ρ_k``, hence
``m_k = 1/(k + s ρ_k)``; this form is free of overflow and valid for
complex ``λ``.  The γ-norm is ``g_k² = ∫_0^1 |u_k(r)|² r dr``.

Every self-adjoint Fourier-multiplier parameter ``Θ = diag(θ_k)`` leaves the
modes invariant, so a resolvent difference is an orthogonal sum of rank-one
pieces and its singular values are explicit per mode.  Each ``k ≠ 0`` occurs
for ``+k`` and ``-k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import EigenvalueCollision
from .ideals import DecayFit, SingularSpectrum, fit_decay
from .numerics.bessel import bessel_i_ratios, reduced_i_series
from .numerics.quadrature import QuadratureRule, graded_rule
from .triple import DiscreteTriple

DEFAULT_K = 256
DEFAULT_WINDOW = (10, 200)

# targets for the n = 2 decay exponents
TARGETS = {
    "robin_vs_neumann": 3.0,
    "dirichlet_vs_neumann": 2.0,
    "robin_pair": 4.0,
    "gamma": 1.5,
    "weyl": 1.0,
}


def _sqrt_minus(lam) -> np.ndarray:
    """Principal ``sqrt(-λ)`` (``Re s > 0`` off the positive axis)."""
    lam = np.asarray(lam)
    if np.iscomplexobj(lam) and np.any(lam.imag != 0):
        return np.sqrt(-lam.astype(complex))
    lam = lam.real
    if np.any(lam > 0):
        return np.sqrt(-lam.astype(complex))
    return np.sqrt(-lam)


def _s_rho(kmax: int, s) -> np.ndarray:
    """``s ρ_k(s)`` for k = 0..kmax with the ``s -> 0`` limit handled."""
    s = np.asarray(s)
    if np.all(s == 0):
        return np.zeros((kmax + 1,) + s.shape)
    return s * bessel_i_ratios(kmax, s)


def mode_weyl_all(K: int, lam: complex) -> np.ndarray:
    """``m_k(λ)`` for k = 0..K."""
    s = _sqrt_minus(lam)
    F = np.arange(K + 1) + _s_rho(K, s)
    if np.any(F == 0):
        raise EigenvalueCollision("λ = 0 is a Neumann eigenvalue (mode 0)", nearest=0.0, mode=0)
    return 1.0 / F


def mode_weyl(k: int, lam: complex):
    """Neumann-to-Dirichlet eigenvalue ``m_k(λ) = I_k(s)/(s I_k'(s))``; even in ``k``."""
    k = abs(int(k))
    return mode_weyl_all(k, lam)[k]


def mode_weyl_derivative_all(K: int, lam: complex) -> np.ndarray:
    """``m_k'(λ)`` from ``F = s I_k'/I_k``: ``dF/ds = s + (k² - F²)/s`` and ``dm/dλ = F'/(2 s F²)``."""
    s = _sqrt_minus(lam)
    k = np.arange(K + 1)
    delta = _s_rho(K, s)
    F = k + delta
    # k² - F² = -δ(2k + δ), written without the cancellation
    dF = s - delta * (2 * k + delta) / s
    return dF / (2 * s * F * F)


def mode_weyl_derivative(k: int, lam: complex):
    k = abs(int(k))
    return mode_weyl_derivative_all(k, lam)[k]


def radial_rule(panels: int = 18, order: int = 20) -> QuadratureRule:
    """Graded Gauss-Legendre rule on [0, 1], refined toward r = 1 where ``r^{2k}`` concentrates."""
    return graded_rule(0.0, 1.0, panels=panels, order=order, ratio=0.6, toward="b")


def interior_profiles(K: int, lam: complex, r: np.ndarray) -> np.ndarray:
    """``I_k(s r)/I_k(s)`` for k = 0..K at radii ``r`` (shape ``(K+1, len(r))``).

    Built from ``Ĩ_0`` and the ratio products
    ``I_k(sr)/I_k(s) = [I_0(sr)/I_0(s)] Π_{j<k} ρ_j(sr)/ρ_j(s)``.
    """
    s = _sqrt_minus(lam)
    r = np.asarray(r, dtype=float)
    if s == 0:
        return r[None, :] ** np.arange(K + 1)[:, None]
    base = reduced_i_series(0, s * r) / reduced_i_series(0, s)
    rho_r = bessel_i_ratios(K, s * r)
    rho_1 = bessel_i_ratios(K, np.asarray(s))
    logq = np.log(rho_r[:K] / rho_1[:K, None])
    logcum = np.vstack([np.zeros((1, r.size)), np.cumsum(logq, axis=0)])
    return base[None, :] * np.exp(logcum)


def mode_gamma_norm_sq_all(K: int, lam: complex, rule: QuadratureRule | None = None) -> np.ndarray:
    """``g_k² = ∫_0^1 |u_k(r)|² r dr`` for k = 0..K by quadrature."""
    rule = radial_rule() if rule is None else rule
    m = mode_weyl_all(K, lam)
    prof = interior_profiles(K, lam, rule.nodes)
    integrals = (np.abs(prof) ** 2) @ (rule.weights * rule.nodes)
    return np.abs(m) ** 2 * integrals


def mode_gamma_norm(k: int, lam: complex, rule: QuadratureRule | None = None) -> float:
    """``g_k = ||γ_k(λ)||``; equals ``sqrt(m_k'(λ))`` for real ``λ``."""
    k = abs(int(k))
    return float(np.sqrt(mode_gamma_norm_sq_all(k, lam, rule)[k]))


def mode_gamma_pairing_all(K: int, lam: complex, rule: QuadratureRule | None = None) -> np.ndarray:
    """``γ_k(λ̄)^* γ_k(λ) = ∫ u_k(λ)² r dr`` (bilinear, no conjugation); equals ``m_k'(λ)``."""
    rule = radial_rule() if rule is None else rule
    m = mode_weyl_all(K, lam)
    prof = interior_profiles(K, lam, rule.nodes)
    return m**2 * ((prof**2) @ (rule.weights * rule.nodes))


# --------------------------------------------------------------------------
# boundary multipliers


@dataclass(frozen=True)
class BoundaryMultiplier:
    """``Θ = diag(θ_k)`` over Fourier modes, with the two limiting relations.

    ``kind`` is ``"operator"`` (values given by ``theta``), ``"dirichlet"``
    (``Θ = 0``, realization ``A_D``) or ``"neumann"`` (purely multivalued,
    realization ``A_N``).
    """

    kind: str = "operator"
    theta: Callable[[np.ndarray], np.ndarray] | None = None
    label: str = ""

    @classmethod
    def const(cls, value: float) -> "BoundaryMultiplier":
        return cls("operator", lambda k: np.full(np.shape(k), float(value)), f"const({value})")

    @classmethod
    def mode_seq(cls, values) -> "BoundaryMultiplier":
        vals = np.asarray(values, dtype=float)

        def seq(k):
            k = np.abs(np.asarray(k))
            if np.any(k >= vals.size):
                raise ValueError("mode sequence shorter than the mode cutoff")
            return vals[k]

        return cls("operator", seq, "mode_seq")

    @classmethod
    def gap_sequence(cls, base: float = 1.0, r: float = 1.0) -> "BoundaryMultiplier":
        """``θ_k = base + (1 + |k|)^{-r}``, so that ``θ - base`` decays like ``k^{-r}``."""
        return cls("operator", lambda k: base + (1.0 + np.abs(np.asarray(k))) ** (-r), f"gap({base},{r})")

    @classmethod
    def dirichlet(cls) -> "BoundaryMultiplier":
        return cls("dirichlet", lambda k: np.zeros(np.shape(k)), "dirichlet")

    @classmethod
    def neumann(cls) -> "BoundaryMultiplier":
        return cls("neumann", None, "neumann")

    def values(self, k: np.ndarray) -> np.ndarray:
        if self.kind == "neumann":
            raise ValueError("the Neumann relation has no operator values")
        return np.asarray(self.theta(np.asarray(k)), dtype=float)

    def is_self_adjoint(self, K: int = DEFAULT_K) -> bool:
        return self.kind == "neumann" or bool(np.all(np.isreal(self.values(np.arange(K + 1)))))

    def essential_surrogate(self, K: int = DEFAULT_K) -> float:
        """``inf |θ_k|`` over the modes (``0 ∉ σ_ess`` surrogate)."""
        if self.kind == "neumann":
            return np.inf
        return float(np.min(np.abs(self.values(np.arange(K + 1)))))


def _inverse_gap(theta: BoundaryMultiplier, m: np.ndarray, k: np.ndarray):
    """``(θ_k - m_k)^{-1}`` with collision detection; zero for the Neumann relation."""
    if theta.kind == "neumann":
        return np.zeros_like(m)
    d = theta.values(k) - m
    bad = np.abs(d) <= 1e-12 * np.maximum(np.abs(m), 1e-300)
    if np.any(bad):
        kk = int(k[np.argmax(bad)])
        raise EigenvalueCollision(f"θ_k = m_k(λ) in mode k = {kk}: λ is an eigenvalue of A_Θ", mode=kk)
    return 1.0 / d


def merge_modes(per_mode: np.ndarray) -> np.ndarray:
    """Duplicate each ``k >= 1`` entry (modes ±k) and sort descending."""
    per_mode = np.asarray(per_mode)
    merged = np.concatenate([per_mode[:1], per_mode[1:], per_mode[1:]])
    return np.sort(merged)[::-1]


def per_mode_svals(pair: str, lam: complex = -1.0, K: int = DEFAULT_K, theta1: BoundaryMultiplier | None = None,
                   theta2: BoundaryMultiplier | None = None) -> np.ndarray:
    """Per-mode singular value (k = 0..K) of a resolvent difference.

    ``pair`` is one of ``"robin_vs_neumann"`` (``θ1`` vs ``A_N``),
    ``"dirichlet_vs_neumann"`` or ``"robin_pair"`` (``θ1`` vs ``θ2``).
    The rank-one Krein piece ``γ_k c γ_k(λ̄)^*`` has singular value
    ``|c| g_k²`` because ``||γ_k(λ̄)|| = ||γ_k(λ)||`` for this real problem.
    """
    k = np.arange(K + 1)
    m = mode_weyl_all(K, lam)
    g2 = mode_gamma_norm_sq_all(K, lam)
    if pair == "robin_vs_neumann":
        c = _inverse_gap(theta1 or BoundaryMultiplier.const(1.0), m, k)
    elif pair == "dirichlet_vs_neumann":
        c = _inverse_gap(BoundaryMultiplier.dirichlet(), m, k)
    elif pair == "robin_pair":
        t1 = theta1 or BoundaryMultiplier.const(1.0)
        t2 = theta2 or BoundaryMultiplier.gap_sequence(1.0, 1.0)
        c = _inverse_gap(t1, m, k) - _inverse_gap(t2, m, k)
    elif pair == "gamma":
        return np.sqrt(g2)
    elif pair == "weyl":
        return np.abs(m)
    else:
        raise ValueError(f"unknown pair {pair!r}")
    return np.abs(c) * g2


@dataclass(frozen=True)
class SpectrumReport:
    pair: str
    lam: complex
    K: int
    spectrum: SingularSpectrum
    fit: DecayFit
    target: float


def resdiff_svals(pair: str, lam: complex = -1.0, K: int = DEFAULT_K, theta1: BoundaryMultiplier | None = None,
                  theta2: BoundaryMultiplier | None = None, window=DEFAULT_WINDOW) -> SpectrumReport:
    """Merged singular values of a disk resolvent difference and their decay fit."""
    vals = merge_modes(per_mode_svals(pair, lam, K, theta1, theta2))
    spec = SingularSpectrum(vals)
    fit = fit_decay(spec, window)
    return SpectrumReport(pair, complex(lam), K, spec, fit, TARGETS[pair])


@dataclass(frozen=True)
class DiskTrace:
    lhs: complex
    rhs: complex
    defect: float
    tail_bound: float


def trace_check_disk(theta: BoundaryMultiplier, lam: complex = -1.0, K: int = 32) -> DiskTrace:
    """Trace of ``(A_Θ-λ)^{-1} - (A_N-λ)^{-1}`` over modes ``|k| <= K``.

    ``lhs`` sums the traces ``(θ_k - m_k)^{-1} ∫ u_k² r dr`` of the rank-one
    pieces (quadrature); ``rhs`` sums ``m_k'(λ)/(θ_k - m_k)`` (closed form).
    The neglected modes contribute ``O(K^{-2})``; ``tail_bound`` estimates it
    from the last term (terms decay like ``k^{-3}``).
    """
    k = np.arange(K + 1)
    m = mode_weyl_all(K, lam)
    c = _inverse_gap(theta, m, k)
    mult = np.where(k == 0, 1.0, 2.0)
    lhs_terms = c * mode_gamma_pairing_all(K, lam)
    rhs_terms = c * mode_weyl_derivative_all(K, lam)
    lhs = complex(np.sum(mult * lhs_terms))
    rhs = complex(np.sum(mult * rhs_terms))
    tail = float(abs(rhs_terms[-1]) * K) if K > 0 else 0.0
    return DiskTrace(lhs, rhs, abs(lhs - rhs), tail)


# --------------------------------------------------------------------------
# discrete radial triple


def mode_triple(k: int, n: int = 512) -> DiscreteTriple:
    """Summation-by-parts triple for mode ``k`` on the radial grid.

    Nodes ``r_j = (j + 1/2) h``, ``j = 0..n``, ``h = 1/(n + 1/2)``; the last
    node sits on ``r = 1`` and the first at ``ε = h/2``.  The stiffness is the
    exact matrix of the form

        Σ_j r_{j+1/2} (u_{j+1} - u_j)² / h + Σ_j w_j k² u_j² / r_j²

    with no flux through ``r = 0`` (regularity closure) and the lumped mass
    ``w_j = h r_j`` (half cell ``(h/2)(1 - h/4)`` at ``r = 1``).  ``Γ1`` is the
    value at ``r = 1``, ``Γ0`` a second-order one-sided ``∂_r``.
    """
    k = abs(int(k))
    h = 1.0 / (n + 0.5)
    r = (np.arange(n + 1) + 0.5) * h
    w = h * r
    w[-1] = 0.5 * h * (1.0 - 0.25 * h)
    rhalf = (np.arange(n) + 1.0) * h
    N = n + 1
    S = np.zeros((N, N))
    idx = np.arange(n)
    c = rhalf / h
    S[idx, idx] += c
    S[idx + 1, idx + 1] += c
    S[idx, idx + 1] -= c
    S[idx + 1, idx] -= c
    S[np.arange(N), np.arange(N)] += w * k * k / r**2
    G1 = np.zeros((1, N))
    G1[0, -1] = 1.0
    G0 = np.zeros((1, N))
    G0[0, -3:] = np.array([1.0, -4.0, 3.0]) / (2 * h)
    return DiscreteTriple.from_stiffness(S, np.diag(w), np.eye(1), G0, G1, name=f"disk_mode(k={k},n={n})",
                                         interior_rows=np.arange(N - 1))


def mode_weyl_ode(k: int, lam: complex, n_steps: int = 4000) -> complex:
    """Independent oracle for ``m_k``: Riccati integration of the radial ODE."""
    from .numerics.ode import bessel_riccati_weyl

    return bessel_riccati_weyl(abs(int(k)), lam, n_steps=n_steps)
