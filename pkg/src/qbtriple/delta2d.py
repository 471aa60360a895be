"""δ and δ' interactions on the unit circle Σ in R².

Per Fourier mode ``k`` with ``s = sqrt(-λ)`` the λ-solutions are
``I_k(s r)`` inside and ``K_k(s r)`` outside.  Normals point out of each
component, so on the exterior side ``∂_ν = -∂_r``.

Tilde triple (``Γ̃0 f = ∂_ν f_i + ∂_ν f_e``, ``Γ̃1 f = f|_Σ``, continuous ``f``):

    m̃_k = I_k(s) K_k(s) = 1 / (s (ρ_k + q_k)),   ρ_k = I_{k+1}/I_k,  q_k = K_{k+1}/K_k,

using the Wronskian ``I_k K_k' - I_k' K_k = -1/x``.  ``ker Γ̃0 = A_free`` and
``ker Γ̃1 = A_D,i ⊕ A_D,e``.

Hat triple (``Γ̂0 f = ∂_ν f_e``, ``Γ̂1 f = f_e|_Σ - f_i|_Σ``, continuous flux):

    m̂_k = m_i + m_e,   m_i = I_k/(s I_k') = 1/(k + s ρ_k),   m_e = -K_k/(s K_k') = 1/(s q_k - k).

``ker Γ̂0 = A_N,i ⊕ A_N,e`` and ``ker Γ̂1 = A_free``.

Realizations: ``A_{δ,α}`` is ``α Γ̃1 f = Γ̃0 f`` (``X = α, Y = 1`` in the tilde
triple) and ``A_{δ',β}`` is ``Γ̂1 f = β Γ̂0 f`` (``Θ = β`` in the hat triple).
With these signs ``α > 0`` is attractive: in two dimensions mode 0 carries a
bound state for every ``α > 0`` and mode ``k`` iff ``α > 2k``; likewise every
``β > 0`` produces a bound state in mode 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .disk2d import SpectrumReport, _s_rho, _sqrt_minus, interior_profiles, merge_modes, radial_rule
from .errors import EigenvalueCollision
from .ideals import SingularSpectrum, fit_decay
from .numerics.bessel import bessel_k_ratios, log_bessel_k0
from .numerics.quadrature import QuadratureRule, graded_rule
from .triple import DiscreteTriple

DEFAULT_K = 256
DEFAULT_R = 30.0
DEFAULT_WINDOW = (10, 200)

PAIRS = {
    # name: (description, target exponent for n = 2)
    "delta_vs_free": ("A_{δ,α} vs A_free", 3.0),
    "delta_prime_vs_free": ("A_{δ',β} vs A_free", 2.0),
    "delta_prime_vs_neumann": ("A_{δ',β} vs A_N,i ⊕ A_N,e", 3.0),
    "free_vs_dirichlet": ("A_free vs A_D,i ⊕ A_D,e", 2.0),
    "free_vs_neumann": ("A_free vs A_N,i ⊕ A_N,e", 2.0),
    "delta_vs_dirichlet": ("A_{δ,α} vs A_D,i ⊕ A_D,e", 2.0),
}


def exterior_rule(R: float = DEFAULT_R, panels: int = 22, order: int = 20) -> QuadratureRule:
    """Gauss-Legendre on [1, R] with panels graded toward r = 1 (where ``r^{-2k}`` concentrates)."""
    return graded_rule(1.0, R, panels=panels, order=order, ratio=0.6, toward="a")


def exterior_profiles(K: int, lam: complex, r: np.ndarray) -> np.ndarray:
    """``K_k(s r)/K_k(s)`` for k = 0..K at radii ``r >= 1`` (shape ``(K+1, len(r))``)."""
    s = _sqrt_minus(lam)
    r = np.asarray(r, dtype=float)
    sr = s * r
    log0 = log_bessel_k0(sr) - log_bessel_k0(np.asarray(s))
    q_r = bessel_k_ratios(K, sr)
    q_1 = bessel_k_ratios(K, np.asarray(s))
    logq = np.log(q_r[:K] / q_1[:K, None])
    logcum = np.vstack([np.zeros((1, r.size)), np.cumsum(logq, axis=0)])
    out = np.exp(log0[None, :] + logcum)
    return out


@dataclass(frozen=True)
class InterfaceModes:
    """Per-mode data (k = 0..K) of both interface triples at one spectral point."""

    lam: complex
    K: int
    R: float
    m_i: np.ndarray
    m_e: np.ndarray
    tilde_m: np.ndarray
    hat_m: np.ndarray
    int_i: np.ndarray   # ∫_0^1 |I_k(sr)/I_k(s)|² r dr
    int_e: np.ndarray   # ∫_1^R |K_k(sr)/K_k(s)|² r dr
    tail_e: np.ndarray  # bound for ∫_R^∞ of the same integrand

    @property
    def tilde_norm_sq(self) -> np.ndarray:
        """``||γ̃_k||²``: the solution equals ``m̃_k`` on Σ on both sides."""
        return np.abs(self.tilde_m) ** 2 * (self.int_i + self.int_e)

    @property
    def hat_norm_sq(self) -> np.ndarray:
        """``||γ̂_k||²``: interior part ``-m_i I/I(1)``, exterior part ``m_e K/K(1)``."""
        return np.abs(self.m_i) ** 2 * self.int_i + np.abs(self.m_e) ** 2 * self.int_e

    @property
    def g_i_sq(self) -> np.ndarray:
        return np.abs(self.m_i) ** 2 * self.int_i

    @property
    def g_e_sq(self) -> np.ndarray:
        return np.abs(self.m_e) ** 2 * self.int_e

    def mode(self, k: int) -> "InterfaceMode":
        k = abs(int(k))
        return InterfaceMode(k, self.lam, complex(self.m_i[k]), complex(self.m_e[k]), complex(self.tilde_m[k]),
                             complex(self.hat_m[k]), float(self.g_i_sq[k]), float(self.g_e_sq[k]),
                             float(self.tilde_norm_sq[k]), float(self.hat_norm_sq[k]))


@dataclass(frozen=True)
class InterfaceMode:
    k: int
    lam: complex
    m_i: complex
    m_e: complex
    tilde_m: complex
    hat_m: complex
    g_i_sq: float
    g_e_sq: float
    tilde_norm_sq: float
    hat_norm_sq: float


def weyl_values(K: int, lam: complex):
    """``(m_i, m_e, m̃, m̂)`` for k = 0..K (closed forms via Bessel ratios)."""
    s = _sqrt_minus(lam)
    k = np.arange(K + 1)
    srho = _s_rho(K, s)
    sq = s * bessel_k_ratios(K, np.asarray(s))
    m_i = 1.0 / (k + srho)
    m_e = 1.0 / (sq - k)
    m_t = 1.0 / (srho + sq)
    return m_i, m_e, m_t, m_i + m_e


def interface_modes(K: int = DEFAULT_K, lam: complex = -1.0, R: float = DEFAULT_R) -> InterfaceModes:
    """Weyl values and γ-norm integrals of every mode ``|k| <= K``."""
    m_i, m_e, m_t, m_h = weyl_values(K, lam)
    ri = radial_rule()
    re = exterior_rule(R)
    pi = interior_profiles(K, lam, ri.nodes)
    pe = exterior_profiles(K, lam, re.nodes)
    int_i = (np.abs(pi) ** 2) @ (ri.weights * ri.nodes)
    int_e = (np.abs(pe) ** 2) @ (re.weights * re.nodes)
    # tail: |K_k(sr)| <= |K_k(sR)| sqrt(R/r) e^{-Re s (r-R)} up to a factor < 2
    s = _sqrt_minus(lam)
    ratio_R = exterior_profiles(K, lam, np.array([R]))[:, 0]
    tail = 2.0 * np.abs(ratio_R) ** 2 * R / (2.0 * np.real(s))
    return InterfaceModes(complex(lam), K, R, m_i, m_e, m_t, m_h, int_i, int_e, tail)


def interface_mode(k: int, lam: complex = -1.0, R: float = DEFAULT_R) -> InterfaceMode:
    return interface_modes(abs(int(k)), lam, R).mode(k)


# --------------------------------------------------------------------------
# realizations


def _check_gap(d: np.ndarray, what: str) -> None:
    bad = np.abs(d) <= 1e-12
    if np.any(bad):
        kk = int(np.argmax(bad))
        raise EigenvalueCollision(f"{what} vanishes in mode k = {kk}: λ is an eigenvalue", mode=kk)


@dataclass(frozen=True)
class InteractionData:
    """Per-mode Krein coefficients ``c_k`` (the correction is ``γ_k c_k γ_k(λ̄)^*``)."""

    kind: str
    strength: float
    modes: InterfaceModes
    coefficient: np.ndarray

    @property
    def correction_svals(self) -> np.ndarray:
        """Per-mode singular value of the correction relative to the triple's ``A0``."""
        nrm = self.modes.tilde_norm_sq if self.kind == "delta" else self.modes.hat_norm_sq
        return np.abs(self.coefficient) * nrm


def realize_delta(alpha: float, lam: complex = -1.0, K: int = DEFAULT_K, R: float = DEFAULT_R,
                  modes: InterfaceModes | None = None) -> InteractionData:
    """``A_{δ,α}`` in the tilde triple: ``c_k = α / (1 - α m̃_k)`` (``α = 0`` gives ``A_free``)."""
    modes = modes or interface_modes(K, lam, R)
    gap = 1.0 - alpha * modes.tilde_m
    _check_gap(gap, "1 - α m̃_k(λ)")
    return InteractionData("delta", float(alpha), modes, alpha / gap)


def realize_delta_prime(beta: float, lam: complex = -1.0, K: int = DEFAULT_K, R: float = DEFAULT_R,
                        modes: InterfaceModes | None = None) -> InteractionData:
    """``A_{δ',β}`` in the hat triple: ``c_k = 1 / (β - m̂_k)``; needs ``β ≠ 0``."""
    if beta == 0:
        raise ValueError("δ' strength must be nonzero (β = 0 is A_free, not a δ' realization)")
    modes = modes or interface_modes(K, lam, R)
    gap = beta - modes.hat_m
    _check_gap(gap, "β - m̂_k(λ)")
    return InteractionData("delta_prime", float(beta), modes, 1.0 / gap)


def per_mode_svals(pair: str, modes: InterfaceModes, alpha: float = 1.0, beta: float = 1.0) -> np.ndarray:
    """Per-mode singular values of the resolvent differences in :data:`PAIRS`."""
    mt, mh = modes.tilde_m, modes.hat_m
    nt, nh = modes.tilde_norm_sq, modes.hat_norm_sq
    if pair == "delta_vs_free":
        c = realize_delta(alpha, modes=modes).coefficient
        return np.abs(c) * nt
    if pair == "delta_vs_dirichlet":
        gap = 1.0 - alpha * mt
        _check_gap(gap, "1 - α m̃_k(λ)")
        return nt / np.abs(mt * gap)
    if pair == "free_vs_dirichlet":
        return nt / np.abs(mt)
    if pair == "free_vs_neumann":
        return nh / np.abs(mh)
    if pair == "delta_prime_vs_neumann":
        return realize_delta_prime(beta, modes=modes).correction_svals
    if pair == "delta_prime_vs_free":
        gap = beta - mh
        _check_gap(gap, "β - m̂_k(λ)")
        return np.abs(beta / (mh * gap)) * nh
    raise ValueError(f"unknown pair {pair!r}; expected one of {sorted(PAIRS)}")


def chain_svals(pair: str, lam: complex = -1.0, K: int = DEFAULT_K, R: float = DEFAULT_R, alpha: float = 1.0,
                beta: float = 1.0, window=DEFAULT_WINDOW, modes: InterfaceModes | None = None) -> SpectrumReport:
    """Merged singular values (modes ±k) of one resolvent difference and their decay fit."""
    modes = modes or interface_modes(K, lam, R)
    vals = merge_modes(per_mode_svals(pair, modes, alpha, beta))
    spec = SingularSpectrum(vals)
    return SpectrumReport(pair, complex(lam), K, spec, fit_decay(spec, window), PAIRS[pair][1])


def bound_states(kind: str, strength: float, k: int = 0, lam_min: float = -400.0, n_samples: int = 400) -> np.ndarray:
    """Negative eigenvalues of ``A_{δ,α}`` (kind ``"delta"``) or ``A_{δ',β}`` in mode ``k``.

    Roots of ``1 - α m̃_k(λ)`` or ``β - m̂_k(λ)`` on ``[lam_min, 0)``; both
    functions are monotone there (Nevanlinna property), so there is at most one.
    """

    def f(lam):
        _, _, mt, mh = weyl_values(abs(k), lam)
        if kind == "delta":
            return float(np.real(1.0 - strength * mt[-1]))
        return float(np.real(strength - mh[-1]))

    grid = -np.geomspace(-lam_min, 1e-8, n_samples)
    vals = np.array([f(x) for x in grid])
    roots = [brentq(f, grid[i], grid[i + 1], xtol=1e-13, rtol=1e-13)
             for i in range(n_samples - 1) if vals[i] * vals[i + 1] < 0]
    return np.array(roots)


# --------------------------------------------------------------------------
# discrete per-mode interface triples


def _radial_grids(n_int: int, n_ext: int, R: float):
    h = 1.0 / (n_int + 0.5)
    r_i = (np.arange(n_int + 1) + 0.5) * h
    # exterior: first step h, geometric growth to reach R
    g = brentq(lambda q: h * (q**n_ext - 1) / (q - 1) - (R - 1.0), 1.0 + 1e-9, 2.0)
    steps = h * g ** np.arange(n_ext)
    r_e = 1.0 + np.concatenate([[0.0], np.cumsum(steps)])
    return r_i, r_e


def _radial_stiffness(r: np.ndarray, k: int, first_half_cell: bool):
    """Form matrix and lumped mass of ``∫ (|u'|² + k²|u|²/r²) r dr`` on nodes ``r``."""
    n = r.size
    hs = np.diff(r)
    rmid = 0.5 * (r[1:] + r[:-1])
    S = np.zeros((n, n))
    idx = np.arange(n - 1)
    c = rmid / hs
    S[idx, idx] += c
    S[idx + 1, idx + 1] += c
    S[idx, idx + 1] -= c
    S[idx + 1, idx] -= c
    w = np.zeros(n)
    # dual cells: half of each adjacent interval, weighted by r
    w[:-1] += 0.5 * hs * (r[:-1] + 0.25 * hs)
    w[1:] += 0.5 * hs * (r[1:] - 0.25 * hs)
    if first_half_cell:
        # cell-centred start at r_0 = h/2: the cell [0, h/2] belongs to node 0
        w[0] += 0.5 * r[0] ** 2
    S[np.arange(n), np.arange(n)] += w * k * k / r**2
    return S, w


def tilde_mode_triple(k: int, n_int: int = 256, n_ext: int = 160, R: float = 20.0) -> DiscreteTriple:
    """Discrete tilde triple for mode ``k``: shared node at Σ, ``Γ1 = f(1)``, flux jump as ``Γ0``.

    Dirichlet condition at the truncation radius ``R`` (last node removed).
    """
    r_i, r_e = _radial_grids(n_int, n_ext, R)
    r = np.concatenate([r_i, r_e[1:-1]])
    S, w = _radial_stiffness(np.concatenate([r, r_e[-1:]]), abs(k), True)
    S, w = S[:-1, :-1], w[:-1]
    N = r.size
    j = n_int
    G1 = np.zeros((1, N))
    G1[0, j] = 1.0
    h_i = r_i[-1] - r_i[-2]
    h1, h2 = r_e[1] - r_e[0], r_e[2] - r_e[1]
    G0 = np.zeros((1, N))
    # ∂_r f_i(1) (backward) minus ∂_r f_e(1) (forward, nonuniform three-point)
    G0[0, j - 2:j + 1] += np.array([1.0, -4.0, 3.0]) / (2 * h_i)
    a = -(2 * h1 + h2) / (h1 * (h1 + h2))
    b = (h1 + h2) / (h1 * h2)
    c = -h1 / (h2 * (h1 + h2))
    G0[0, j:j + 3] -= np.array([a, b, c])
    interior = np.array([i for i in range(N) if i != j])
    return DiscreteTriple.from_stiffness(S, np.diag(w), np.eye(1), G0, G1, name=f"delta_tilde(k={k})",
                                         interior_rows=interior)


def hat_mode_triple(k: int, n_int: int = 256, n_ext: int = 160, R: float = 20.0) -> DiscreteTriple:
    """Discrete hat triple for mode ``k``: nodes ``1-`` and ``1+`` duplicated.

    ``Γ1 f = f(1+) - f(1-)`` and ``Γ0 f = -∂_r f_e(1)``; the two sides are
    coupled only through the boundary maps.
    """
    r_i, r_e = _radial_grids(n_int, n_ext, R)
    S_i, w_i = _radial_stiffness(r_i, abs(k), True)
    S_e, w_e = _radial_stiffness(r_e, abs(k), False)
    S_e, w_e = S_e[:-1, :-1], w_e[:-1]
    ni, ne = r_i.size, r_e.size - 1
    N = ni + ne
    S = np.zeros((N, N))
    S[:ni, :ni] = S_i
    S[ni:, ni:] = S_e
    w = np.concatenate([w_i, w_e])
    G1 = np.zeros((1, N))
    G1[0, ni - 1] = -1.0
    G1[0, ni] = 1.0
    h1, h2 = r_e[1] - r_e[0], r_e[2] - r_e[1]
    a = -(2 * h1 + h2) / (h1 * (h1 + h2))
    b = (h1 + h2) / (h1 * h2)
    c = -h1 / (h2 * (h1 + h2))
    G0 = np.zeros((1, N))
    G0[0, ni:ni + 3] = -np.array([a, b, c])
    # strong rows: all nodes off Σ plus the flux balance (sum of the rows at 1- and 1+)
    keep = [i for i in range(N) if i not in (ni - 1, ni)]
    interior = np.zeros((N - 1, N))
    interior[np.arange(N - 2), keep] = 1.0
    interior[-1, [ni - 1, ni]] = 1.0
    return DiscreteTriple.from_stiffness(S, np.diag(w), np.eye(1), G0, G1, name=f"delta_hat(k={k})",
                                         interior_rows=interior)
