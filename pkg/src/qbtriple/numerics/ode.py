"""Fixed-step fourth-order integration and linear two-point shooting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


def rk4_ivp(rhs: Callable[[float, np.ndarray], np.ndarray], grid, y0) -> np.ndarray:
    """Classical RK4 on the given grid; returns samples of shape ``(len(grid),) + y0.shape``."""
    grid = np.asarray(grid, dtype=float)
    y = np.array(y0, dtype=complex if np.iscomplexobj(y0) else float)
    out = np.empty((grid.size,) + y.shape, dtype=y.dtype)
    out[0] = y
    for i in range(grid.size - 1):
        t, h = grid[i], grid[i + 1] - grid[i]
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = y
    return out


@dataclass(frozen=True)
class BoundaryCondition:
    """``a * u(x) + b * u'(x) = c`` at one endpoint."""

    a: complex
    b: complex
    c: complex = 0.0


def ode_solve_bvp(p: Callable, q: Callable, grid, left: BoundaryCondition, right: BoundaryCondition,
                  r: Callable | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Solve ``u'' = p(x) u' + q(x) u + r(x)`` with separated linear boundary conditions.

    Linear shooting by superposition: one particular and one homogeneous RK4
    solution are combined to meet the right-hand condition.

    Returns
    -------
    u, du : arrays of samples of ``u`` and ``u'`` on ``grid``.
    """
    grid = np.asarray(grid, dtype=float)
    r = r if r is not None else (lambda x: 0.0)

    def rhs_inh(x, y):
        return np.array([y[1], p(x) * y[1] + q(x) * y[0] + r(x)])

    def rhs_hom(x, y):
        return np.array([y[1], p(x) * y[1] + q(x) * y[0]])

    a, b, c = left.a, left.b, left.c
    # particular start meets the left condition, homogeneous start spans its kernel
    if abs(b) >= abs(a):
        y_part = np.array([0.0, c / b], dtype=complex)
    else:
        y_part = np.array([c / a, 0.0], dtype=complex)
    y_hom = np.array([b, -a], dtype=complex)
    sp = rk4_ivp(rhs_inh, grid, y_part)
    sh = rk4_ivp(rhs_hom, grid, y_hom)
    ra, rb, rc = right.a, right.b, right.c
    denom = ra * sh[-1, 0] + rb * sh[-1, 1]
    if abs(denom) < 1e-14 * (abs(ra) + abs(rb)) * np.max(np.abs(sh)):
        raise ValueError("boundary value problem is singular (homogeneous solution meets both conditions)")
    t = (rc - ra * sp[-1, 0] - rb * sp[-1, 1]) / denom
    sol = sp + t * sh
    if not (np.iscomplexobj(p(grid[0])) or np.iscomplexobj(q(grid[0])) or np.iscomplexobj(np.array([a, b, c, ra, rb, rc]))):
        sol = sol.real
    return sol[:, 0], sol[:, 1]


def bessel_riccati_weyl(k: int, lam: complex, n_steps: int = 4000, t0: float | None = None) -> complex:
    """Interior Neumann-to-Dirichlet value of ``-Δ - λ`` on the unit disk, mode ``k``.

    Integrates the Riccati equation ``w' = k² + s² e^{2t} - w²`` for the
    logarithmic derivative ``w = r u'(r)/u(r)`` in ``t = ln r`` from deep
    inside the disk (where ``w ≈ k + s²r²/(2(k+1))``) to ``r = 1``; the
    value returned is ``u(1)/u'(1) = 1/w(0)``.  Independent of any Bessel
    machinery; used as an oracle.
    """
    s2 = -complex(lam)
    if t0 is None:
        t0 = -6.0
    r0 = np.exp(t0)
    # series start, accurate to O(r0^6)
    w_start = k + s2 * r0**2 / (2 * (k + 1)) - (s2 * r0**2) ** 2 / (8 * (k + 1) ** 2 * (k + 2))
    grid = np.linspace(t0, 0.0, n_steps + 1)

    def rhs(t, w):
        return k * k + s2 * np.exp(2 * t) - w * w

    w = rk4_ivp(rhs, grid, np.array(w_start, dtype=complex))[-1]
    return complex(1.0 / w)
