"""Sturm-Liouville model ``-f'' + q f`` on (0, 1).

Grid ``x_j = j h`` (``j = 0..N-1``, ``h = 1/(N-1)``) with the second-order
summation-by-parts mass ``W = h diag(1/2, 1, ..., 1, 1/2)`` and stiffness

    S = (1/h) tridiag(-1, 2, -1)  (with 1 on the two corner entries)  +  W diag(q).

Boundary maps: ``Γ1 f = (f(0), f(1))`` and, for the action matrix, the
second-order one-sided outward derivatives ``Γ0 f ≈ (-f'(0), f'(1))``
(the outward normal at ``x = 0`` is ``-d/dx``).  ``T_act`` is defined as
``W^{-1}(S - Γ1* Γ0)``, which makes the discrete Green identity exact.

The boundary space is ``C^2`` with the Euclidean inner product, so the
boundary is finite dimensional and the resolvent difference of any two
realizations has rank at most 2; no Schatten decay exponent is meaningful
in this model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .triple import (
    BoundaryParameter,
    DiscreteTriple,
    Realization,
    dissipativity_check,
    eigenvalues_via_weyl,
    realize,
    trace_formula_check,
)


@dataclass(frozen=True)
class IntervalModel:
    """Potential samples on the uniform grid of ``n_grid`` nodes."""

    n_grid: int = 400
    q: np.ndarray | None = None

    def __post_init__(self):
        if self.n_grid < 64:
            raise ValueError("n_grid must be at least 64")
        q = np.zeros(self.n_grid) if self.q is None else np.asarray(self.q, dtype=float)
        if q.shape != (self.n_grid,):
            raise ValueError("q must have one sample per grid node")
        if not np.all(np.isfinite(q)):
            raise ValueError("q must be finite")
        q = q.copy()
        q.setflags(write=False)
        object.__setattr__(self, "q", q)

    @property
    def h(self) -> float:
        return 1.0 / (self.n_grid - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.n_grid)

    @classmethod
    def from_function(cls, n_grid: int, q) -> "IntervalModel":
        x = np.linspace(0.0, 1.0, n_grid)
        return cls(n_grid, np.asarray(q(x), dtype=float) * np.ones(n_grid))


def build_triple(model: IntervalModel) -> DiscreteTriple:
    """Summation-by-parts triple for ``-d²/dx² + q`` with Neumann/Dirichlet boundary maps."""
    N, h = model.n_grid, model.h
    w = np.full(N, h)
    w[0] = w[-1] = 0.5 * h
    W = np.diag(w)
    main = np.full(N, 2.0)
    main[0] = main[-1] = 1.0
    S = (np.diag(main) - np.diag(np.ones(N - 1), 1) - np.diag(np.ones(N - 1), -1)) / h
    S = S + np.diag(w * model.q)
    G1 = np.zeros((2, N))
    G1[0, 0] = 1.0
    G1[1, -1] = 1.0
    G0 = np.zeros((2, N))
    # outward derivatives: -f'(0) and f'(1), one-sided second order
    G0[0, :3] = np.array([3.0, -4.0, 1.0]) / (2 * h)
    G0[1, -3:] = np.array([1.0, -4.0, 3.0]) / (2 * h)
    return DiscreteTriple.from_stiffness(S, W, np.eye(2), G0, G1, name=f"sl1d(N={N})",
                                         interior_rows=np.arange(1, N - 1))


def weyl_exact(lam: complex) -> np.ndarray:
    """Neumann-to-Dirichlet matrix of ``-f'' = λ f`` on (0, 1) (``q = 0``).

    With ``s = sqrt(-λ)``: ``M = (1/s) [[coth s, 1/sinh s], [1/sinh s, coth s]]``.
    """
    s = np.sqrt(-complex(lam))
    if abs(s) == 0:
        raise ValueError("λ = 0 is a Neumann eigenvalue")
    c = 1.0 / np.tanh(s)
    d = 1.0 / np.sinh(s)
    M = np.array([[c, d], [d, c]]) / s
    return M.real if np.isreal(lam) and complex(lam).real < 0 else M


def neumann_eigenvalues(n: int) -> np.ndarray:
    return (np.pi * np.arange(n)) ** 2


def dirichlet_eigenvalues(n: int) -> np.ndarray:
    return (np.pi * np.arange(1, n + 1)) ** 2


@dataclass(frozen=True)
class RobinResult:
    theta: BoundaryParameter
    realization: Realization
    eigenvalues: np.ndarray
    weyl_roots: np.ndarray


def robin_realization(model: IntervalModel, B, interval=None) -> RobinResult:
    """Robin/nonlocal condition ``Γ0 f = B Γ1 f`` (``Θ = B^{-1}``, encoded as ``X = B, Y = I``).

    ``interval`` (default: below the second Neumann eigenvalue shifted into
    the resolvent set) is scanned with :func:`eigenvalues_via_weyl`.
    """
    t = build_triple(model)
    theta = BoundaryParameter.inverse_of(np.asarray(B))
    real = realize(t, theta)
    ev = real.eigenvalues()
    roots = np.zeros(0)
    if interval is not None:
        roots = eigenvalues_via_weyl(t, theta, interval)
    return RobinResult(theta, real, ev, roots)


def trace_targets(lam: float = -1.0) -> dict:
    """Exact ``tr((A_D - λ)^{-1} - (A_N - λ)^{-1})`` for ``q = 0``.

    The Dirichlet eigenvalues ``(jπ)²``, ``j >= 1`` all reappear in the Neumann
    spectrum, which has the single extra eigenvalue 0; hence the difference
    equals ``-1/(0 - λ) = 1/λ``.  Independently ``det M(λ) = -1/λ``, and
    ``-d/dλ log det M(λ) = 1/λ``.
    """
    lam = float(lam)
    series = -1.0 / (0.0 - lam)
    s = np.sqrt(-lam)

    def logdet(x):
        return np.log(abs(np.linalg.det(weyl_exact(x))))

    step = 1e-5 * max(1.0, abs(lam))
    logdet_value = -(logdet(lam + step) - logdet(lam - step)) / (2 * step)
    return {"lambda": lam, "eigenvalue_series": series, "log_det": float(logdet_value),
            "det_closed_form": float((1.0 / np.tanh(s) ** 2 - 1.0 / np.sinh(s) ** 2) / s**2)}


def dirichlet_vs_neumann_trace(model: IntervalModel, lam: float = -1.0):
    """Both sides of the trace formula for the Dirichlet/Neumann pair."""
    t = build_triple(model)
    return trace_formula_check(t, BoundaryParameter.zero(2), lam)


def dissipative_demo(model: IntervalModel, B, lam: complex | None = None):
    """Spectrum of the realization with ``Θ = B`` (``Γ1 f = B Γ0 f``).

    For ``Im B ⪰ 0`` this parameter is dissipative and all eigenvalues lie in
    the closed upper half plane.
    """
    t = build_triple(model)
    theta = BoundaryParameter.operator(np.asarray(B, dtype=complex))
    return dissipativity_check(t, theta, lam)
