"""Singular-value sequences: decay fits, Schatten sums and ideal-product checks.

Membership ``s_k = O(k^{-r})`` is an asymptotic statement; numerically it is
represented by the slope of a least-squares line through ``(log k, log s_k)``
over a window that skips the preasymptotic head and anything below the
numerical noise floor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics.linalg import singular_values

DEFAULT_SKIP = 5
MIN_POINTS = 9


@dataclass(frozen=True)
class SingularSpectrum:
    """Nonincreasing nonnegative sequence ``s_1 >= s_2 >= ...``.

    Input is sorted in decreasing order on construction.  ``floor`` defaults to
    ``1e-12 s_1``; values below it are treated as noise.
    """

    values: np.ndarray
    floor: float | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if np.any(~np.isfinite(v)):
            raise ValueError("singular values must be finite")
        if np.any(v < 0):
            raise ValueError("singular values must be nonnegative")
        v = np.sort(v)[::-1].copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if self.floor is None:
            object.__setattr__(self, "floor", 1e-12 * float(v[0]) if v.size else 0.0)

    def __len__(self) -> int:
        return self.values.size

    @property
    def k(self) -> np.ndarray:
        """1-based indices."""
        return np.arange(1, self.values.size + 1)

    def above_floor(self) -> int:
        """Number of leading values strictly above the floor."""
        return int(np.sum(self.values > self.floor))


@dataclass(frozen=True)
class DecayFit:
    """``log s_k ≈ intercept - exponent · log k`` on ``window = (k_min, k_max)`` (1-based, inclusive)."""

    exponent: float
    intercept: float
    window: tuple[int, int]
    stderr: float

    def within(self, lo: float, hi: float) -> bool:
        return bool(lo <= self.exponent <= hi)


def fit_decay(s: SingularSpectrum | np.ndarray, window=None, skip: int = DEFAULT_SKIP) -> DecayFit:
    """Least-squares power-law exponent of the tail of a singular-value sequence.

    Parameters
    ----------
    s : spectrum (sorted descending).
    window : ``(k_min, k_max)`` 1-based inclusive; defaults to dropping the
        first ``skip`` values and stopping at the last value above the floor.
        ``k_max`` is clipped to the values above the floor.
    """
    if not isinstance(s, SingularSpectrum):
        s = SingularSpectrum(s)
    n_ok = s.above_floor()
    if window is None:
        k_min, k_max = skip + 1, n_ok
    else:
        k_min, k_max = int(window[0]), min(int(window[1]), n_ok)
    k_min = max(k_min, 1)
    if k_max - k_min < MIN_POINTS - 1:
        raise ValueError(f"need at least {MIN_POINTS} values above the floor in the fit window, "
                         f"have window [{k_min}, {k_max}]")
    k = np.arange(k_min, k_max + 1, dtype=float)
    y = np.log(s.values[k_min - 1:k_max])
    x = np.log(k)
    A = np.vstack([np.ones_like(x), -x]).T
    coef, res, rank, _ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    dof = max(x.size - 2, 1)
    sigma2 = float(resid @ resid) / dof
    cov = sigma2 * np.linalg.inv(A.T @ A)
    return DecayFit(float(coef[1]), float(coef[0]), (k_min, k_max), float(np.sqrt(cov[1, 1])))


@dataclass(frozen=True)
class SchattenResult:
    partial_sum: float
    converges: bool
    exponent: float | None
    tail_estimate: float


def schatten_sum(s: SingularSpectrum | np.ndarray, p: float) -> SchattenResult:
    """Partial sum ``Σ s_k^p`` and a convergence verdict.

    Finite rank (fewer than the fit minimum above the floor) is always
    convergent and the sum is exact.  Otherwise the tail is modeled by the
    fitted power law ``s_k ~ C k^{-r}``: the series converges iff ``p r > 1``
    and the remainder is estimated by the integral of the fitted tail.
    """
    if not isinstance(s, SingularSpectrum):
        s = SingularSpectrum(s)
    if p <= 0:
        raise ValueError("p must be positive")
    v = s.values[s.values > s.floor]
    partial = float(np.sum(v**p))
    if v.size < DEFAULT_SKIP + MIN_POINTS:
        return SchattenResult(partial, True, None, 0.0)
    fit = fit_decay(s)
    r = fit.exponent
    converges = p * r > 1.0
    n = fit.window[1]
    if converges:
        C = np.exp(fit.intercept)
        tail = C**p * n ** (1.0 - p * r) / (p * r - 1.0)
    else:
        tail = np.inf
    return SchattenResult(partial, bool(converges), r, float(tail))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary (QR of a complex Gaussian with phase fix)."""
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def local_random_unitary(n: int, rng: np.random.Generator, block: int = 8,
                         layers: int = 2) -> np.ndarray:
    """Brick-wall product of block-diagonal Haar unitaries.

    Each layer is block diagonal with Haar blocks of size ``block``; odd
    layers are offset by half a block.  Unlike a Haar unitary on ``C^n``,
    whose entries scale like ``n^{-1/2}``, this ensemble is banded and has a
    dimension-independent law, so it models a random unitary operator on
    ``l²`` truncated to ``n`` coordinates.
    """
    if block < 1 or layers < 1:
        raise ValueError("block and layers must be positive")
    U = np.eye(n, dtype=complex)
    for layer in range(layers):
        offset = (layer % 2) * (block // 2)
        edges = sorted({0, n, *range(offset, n, block)})
        L = np.zeros((n, n), dtype=complex)
        for a, b in zip(edges[:-1], edges[1:]):
            L[a:b, a:b] = random_unitary(b - a, rng)
        U = L @ U
    return U


def _unitary(n: int, rng: np.random.Generator, ensemble: str) -> np.ndarray:
    if ensemble == "local":
        return local_random_unitary(n, rng)
    if ensemble == "haar":
        return random_unitary(n, rng)
    raise ValueError("ensemble must be 'local' or 'haar'")


def power_law_matrix(r: float, n: int, rng: np.random.Generator | None = None,
                     ensemble: str = "local") -> np.ndarray:
    """``U diag(k^{-r}) V*`` with random unitary factors (diagonal if ``rng`` is None)."""
    d = np.arange(1, n + 1, dtype=float) ** (-r)
    if rng is None:
        return np.diag(d)
    return (_unitary(n, rng, ensemble) * d) @ _unitary(n, rng, ensemble).conj().T


@dataclass(frozen=True)
class ProductLawReport:
    r: float
    s: float
    n_trials: int
    dim: int
    ensemble: str
    inequality_holds: bool
    worst_margin: float
    exponents: np.ndarray
    min_exponent: float
    target: float
    tolerance: float
    passed: bool
    seed: int


def product_law_test(r: float, s: float, n_trials: int = 100, seed: int = 0, dim: int = 200,
                     window=(10, 80), ensemble: str = "local",
                     tolerance: float = 0.3) -> ProductLawReport:
    """Check ``s_{m+n-1}(AB) <= s_m(A) s_n(B)`` and the decay exponent of ``AB``.

    ``A = U_A diag(k^{-r}) V_A*`` and ``B = U_B diag(k^{-s}) V_B*`` with
    independent random unitary factors from ``ensemble``.  The inequality is
    asserted for every ``m = n`` in every trial (roundoff allowance ``1e-12``),
    and the exponent of ``AB`` is fitted on ``window``, away from the
    truncation cutoff.  Passing requires the inequality everywhere and every
    fitted exponent ``>= r + s - tolerance``.

    With ``ensemble="haar"`` the coupling ``V_A* U_B`` has entries of size
    ``dim^{-1/2}``; the product then behaves like a Gaussian sandwich whose
    fitted exponent is close to ``r + s - 1/2`` for every ``dim``.  The
    default ``"local"`` ensemble has an operator limit and is the meaningful
    test of the asymptotic law.
    """
    rng = np.random.default_rng(seed)
    sa = np.arange(1, dim + 1, dtype=float) ** (-r)
    sb = np.arange(1, dim + 1, dtype=float) ** (-s)
    n_idx = np.arange(1, (dim + 1) // 2 + 1)
    worst = np.inf
    exps = np.empty(n_trials)
    for trial in range(n_trials):
        A = (_unitary(dim, rng, ensemble) * sa) @ _unitary(dim, rng, ensemble).conj().T
        B = (_unitary(dim, rng, ensemble) * sb) @ _unitary(dim, rng, ensemble).conj().T
        sab = singular_values(A @ B)
        lhs = sab[2 * n_idx - 2]
        rhs = sa[n_idx - 1] * sb[n_idx - 1]
        worst = min(worst, float(np.min(rhs + 1e-12 - lhs)))
        exps[trial] = fit_decay(SingularSpectrum(sab), window).exponent
    target = float(r + s)
    ok_ineq = worst >= 0.0
    min_exp = float(exps.min()) if exps.size else float("nan")
    return ProductLawReport(float(r), float(s), n_trials, dim, ensemble, bool(ok_ineq), worst,
                            exps, min_exp, target, tolerance,
                            bool(ok_ineq and min_exp >= target - tolerance), seed)


def sobolev_embedding_svals(t_order: float, K: int = 256) -> SingularSpectrum:
    """Singular values ``(1 + k²)^{-t/2}``, ``|k| <= K``, of ``H^t(S¹) -> L²(S¹)``."""
    if t_order < 0:
        raise ValueError("t_order must be nonnegative")
    k = np.arange(-K, K + 1, dtype=float)
    return SingularSpectrum((1.0 + k * k) ** (-0.5 * t_order), floor=0.0 if t_order == 0 else None)


@dataclass(frozen=True)
class LambdaIndependence:
    fit1: DecayFit
    fit2: DecayFit
    difference: float
    tolerance: float = 0.3
    passed: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.difference <= self.tolerance))


def lambda_independence_test(s1: SingularSpectrum, s2: SingularSpectrum, window=None,
                             tolerance: float = 0.3) -> LambdaIndependence:
    """Exponent difference of two resolvent-difference spectra of the same operator pair."""
    f1 = fit_decay(s1, window)
    f2 = fit_decay(s2, window)
    return LambdaIndependence(f1, f2, abs(f1.exponent - f2.exponent), tolerance)
