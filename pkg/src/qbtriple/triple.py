"""Discrete quasi boundary triples and the operations built on them.

A :class:`DiscreteTriple` is a matrix model ``(T_act, W, Wb, G0, G1)`` of a
boundary triple.  ``W`` is the Gram matrix of the Hilbert space (the inner
product is ``(u, v) = v* W u``), ``Wb`` the Gram matrix of the boundary space
and ``G0``, ``G1`` the boundary maps.  The abstract Green identity

    (T f, g) - (f, T g) = (G1 f, G0 g)_b - (G0 f, G1 g)_b

is the matrix identity ``W T - T* W = G0* Wb G1 - G1* Wb G0``; it holds
exactly (up to roundoff) iff the *stiffness* ``S = W T + G1* Wb G0`` is
Hermitian.

All spectral computations go through ``S``.  The boundary value problem
"``f`` is a λ-solution with flux data ``φ``" is read as the weak (natural
boundary condition) problem

    (S - λ W) f = G1* Wb φ,

which is what a summation-by-parts discretization of ``-Δ f = λ f``,
``∂_ν f = φ`` produces.  On the interior rows (where ``G1*`` vanishes) this
is the strong equation ``(T_act - λ) f = 0``.  With this reading

* ``A0 = W^{-1} S`` (flux zero, Neumann type) is self-adjoint in ``(C^N, W)``;
* ``γ(λ) = (S - λW)^{-1} G1* Wb`` and ``M(λ) = G1 γ(λ)``;
* ``γ(λ̄)^* = G1 (S - λW)^{-1} W`` (adjoint taken in the ``W``/``Wb`` inner products);
* ``M'(λ) = γ(λ̄)^* γ(λ)``,

and Krein's formula, the Weyl-difference identity and the trace formula hold
exactly for the discrete model, so every numerical defect is roundoff.

Boundary parameters are linear relations ``Θ = {(X h, Y h)}`` and the
realization is ``A_Θ = {f : (Γ0 f, Γ1 f) ∈ Θ}``: the flux is ``X h`` and the
trace ``G1 f = Y h``.  ``X = 0, Y = I`` gives ``A0``; ``X = I, Y = 0`` gives the
Dirichlet-type ``A1``; ``X = B, Y = I`` is the Robin condition ``Γ0 f = B Γ1 f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
from scipy.optimize import brentq

from .errors import EigenvalueCollision, IllConditionedError, IntervalSplitRequired, NotHermitianError
from .numerics.linalg import MAX_CONDITION, matrix_rank, null_space, solve

SA_TOL = 1e-9
DEFAULT_LAMBDAS = (-1.0, -2.0, -1.0 + 1.0j, -1.0 - 1.0j)


def _as_matrix(a, name: str) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError(f"{name} must be a 2-D matrix")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def _check_hpd(a: np.ndarray, name: str) -> None:
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square")
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    res = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if res > 1e-13 * scale:
        raise NotHermitianError(res, scale)
    try:
        np.linalg.cholesky(0.5 * (a + a.conj().T))
    except np.linalg.LinAlgError:
        raise ValueError(f"{name} is not positive definite") from None


@dataclass(frozen=True)
class DiscreteTriple:
    """Matrix model of a quasi boundary triple.

    Parameters
    ----------
    T_act : (N, N) action matrix (discrete maximal operator).
    W : (N, N) Hermitian positive definite Gram matrix.
    Wb : (m, m) Hermitian positive definite boundary Gram matrix.
    G0, G1 : (m, N) boundary maps (flux and trace).
    interior_rows : rows of ``W (T_act - λ) f = 0`` imposed strongly on
        λ-solutions, either as indices or as an (n_s, N) matrix of row
        combinations; defaults to the indices where ``G1*`` vanishes.
    name : label used in reports.
    """

    T_act: np.ndarray
    W: np.ndarray
    Wb: np.ndarray
    G0: np.ndarray
    G1: np.ndarray
    interior_rows: np.ndarray | None = None
    name: str = "triple"
    S: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        T = _as_matrix(self.T_act, "T_act")
        W = _as_matrix(self.W, "W")
        Wb = _as_matrix(self.Wb, "Wb")
        G0 = _as_matrix(self.G0, "G0")
        G1 = _as_matrix(self.G1, "G1")
        N = T.shape[0]
        m = Wb.shape[0]
        if T.shape != (N, N) or W.shape != (N, N):
            raise ValueError("T_act and W must be N x N")
        if G0.shape != (m, N) or G1.shape != (m, N):
            raise ValueError("G0 and G1 must be m x N")
        _check_hpd(W, "W")
        if m:
            _check_hpd(Wb, "Wb")
        if self.interior_rows is None:
            rows = np.flatnonzero(np.all(G1 == 0, axis=0))
        else:
            rows = np.asarray(self.interior_rows)
            rows = rows.astype(int) if rows.ndim == 1 else _as_matrix(rows, "interior_rows")
            if rows.ndim == 2 and rows.shape[1] != N:
                raise ValueError("interior row combinations must have N columns")
        for key, val in (("T_act", T), ("W", W), ("Wb", Wb), ("G0", G0), ("G1", G1), ("interior_rows", rows)):
            val = val.copy()
            val.setflags(write=False)
            object.__setattr__(self, key, val)
        S = W @ T + G1.conj().T @ Wb @ G0
        S.setflags(write=False)
        object.__setattr__(self, "S", S)

    @property
    def N(self) -> int:
        return self.T_act.shape[0]

    @property
    def m(self) -> int:
        return self.Wb.shape[0]

    @classmethod
    def from_stiffness(cls, S, W, Wb, G0, G1, name: str = "triple", interior_rows=None) -> "DiscreteTriple":
        """Build a triple from a Hermitian stiffness ``S``: ``T_act = W^{-1}(S - G1* Wb G0)``."""
        S = np.asarray(S)
        W = np.asarray(W)
        G0 = np.atleast_2d(np.asarray(G0))
        G1 = np.atleast_2d(np.asarray(G1))
        Wb = np.atleast_2d(np.asarray(Wb))
        rhs = S - G1.conj().T @ Wb @ G0
        if np.count_nonzero(W - np.diag(np.diag(W))) == 0:
            T = rhs / np.diag(W)[:, None]
        else:
            T = sla.solve(W, rhs, assume_a="pos")
        return cls(T, W, Wb, G0, G1, interior_rows=interior_rows, name=name)

    def pencil(self, lam: complex) -> np.ndarray:
        return self.S - lam * self.W

    def adjoint_boundary(self, A: np.ndarray) -> np.ndarray:
        """``Wb``-adjoint ``Wb^{-1} A* Wb`` of an m x m matrix."""
        return np.linalg.solve(self.Wb, A.conj().T @ self.Wb)

    def a0_eigenvalues(self) -> np.ndarray:
        """Spectrum of the flux-zero (Neumann-type) realization ``A0``."""
        S = 0.5 * (self.S + self.S.conj().T)
        return sla.eigh(S, self.W, eigvals_only=True)

    def stacked_rank(self) -> int:
        """Rank of ``[G0; G1]`` (full rank ``2m`` is the discrete dense-range surrogate)."""
        return matrix_rank(np.vstack([self.G0, self.G1]))

    def strong_rows(self, lam: complex) -> np.ndarray:
        """The strongly imposed rows of ``W (T_act - λ)``."""
        A = self.W @ self.T_act - lam * self.W
        if self.interior_rows.ndim == 1:
            return A[self.interior_rows]
        return self.interior_rows @ A

    def constrained_condition(self, lam: complex = -1.0) -> float:
        """Condition number of the square system {strong rows of W (T_act - λ); G0}."""
        A = np.vstack([self.strong_rows(lam), self.G0])
        if A.shape[0] != A.shape[1]:
            return np.inf
        return float(np.linalg.cond(A))


def green_residual(t: DiscreteTriple) -> float:
    """``max|W T - T* W - (G0* Wb G1 - G1* Wb G0)|``."""
    W, T, Wb, G0, G1 = t.W, t.T_act, t.Wb, t.G0, t.G1
    D = W @ T - T.conj().T @ W - (G0.conj().T @ Wb @ G1 - G1.conj().T @ Wb @ G0)
    return float(np.max(np.abs(D))) if D.size else 0.0


def green_tolerance(t: DiscreteTriple) -> float:
    return 1e-12 * (1.0 + float(np.max(np.abs(t.T_act))))


# --------------------------------------------------------------------------
# boundary parameters


@dataclass(frozen=True)
class BoundaryParameter:
    """Linear relation ``Θ = {(X h, Y h) : h ∈ C^d}`` in the boundary space."""

    X: np.ndarray
    Y: np.ndarray
    kind: str = "general"

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.X))
        Y = np.atleast_2d(np.asarray(self.Y))
        if X.shape != Y.shape:
            raise ValueError("X and Y must have the same shape")
        m, d = X.shape
        if d > m:
            raise ValueError("relation dimension d must not exceed m")
        if d and matrix_rank(np.vstack([X, Y])) != d:
            raise ValueError("[X; Y] must have full column rank")
        for key, val in (("X", X), ("Y", Y)):
            val = val.copy()
            val.setflags(write=False)
            object.__setattr__(self, key, val)

    @property
    def m(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    @classmethod
    def operator(cls, B) -> "BoundaryParameter":
        """Graph of the operator ``Θ = B``: pairs ``(h, B h)``, i.e. ``Γ1 f = B Γ0 f``."""
        B = np.atleast_2d(np.asarray(B))
        return cls(np.eye(B.shape[0], dtype=B.dtype), B, "operator")

    @classmethod
    def inverse_of(cls, B) -> "BoundaryParameter":
        """``Θ = B^{-1}`` as pairs ``(B h, h)``, i.e. the Robin condition ``Γ0 f = B Γ1 f``."""
        B = np.atleast_2d(np.asarray(B))
        return cls(B, np.eye(B.shape[0], dtype=B.dtype), "inverse-of-bounded-operator")

    robin = inverse_of

    @classmethod
    def pure_multivalued(cls, m: int) -> "BoundaryParameter":
        """``Θ = {0} x G``; its realization is ``A0 = ker Γ0``."""
        return cls(np.zeros((m, m)), np.eye(m), "pure-multivalued")

    @classmethod
    def zero(cls, m: int) -> "BoundaryParameter":
        """The zero operator; its realization is ``A1 = ker Γ1``."""
        return cls(np.eye(m), np.zeros((m, m)), "operator")

    def form(self, Wb: np.ndarray | None = None) -> np.ndarray:
        """``X* Wb Y``; its imaginary part is ``Im (Θ h, h)`` on the graph."""
        Wb = np.eye(self.m) if Wb is None else Wb
        return self.X.conj().T @ Wb @ self.Y

    def is_symmetric(self, Wb: np.ndarray | None = None, tol: float = 1e-12) -> bool:
        F = self.form(Wb)
        scale = max(1.0, float(np.max(np.abs(F))) if F.size else 0.0)
        return bool(np.max(np.abs(F - F.conj().T), initial=0.0) <= tol * scale)

    def is_self_adjoint(self, Wb: np.ndarray | None = None, tol: float = 1e-12) -> bool:
        return self.d == self.m and self.is_symmetric(Wb, tol)

    def imag_form_eigenvalues(self, Wb: np.ndarray | None = None) -> np.ndarray:
        F = self.form(Wb)
        return np.linalg.eigvalsh((F - F.conj().T) / 2j)

    def is_dissipative(self, Wb: np.ndarray | None = None, tol: float = 1e-12) -> bool:
        """``Im (f', f) >= 0`` on ``Θ``, i.e. ``Im X* Wb Y ⪰ 0``."""
        ev = self.imag_form_eigenvalues(Wb)
        return bool(ev.size == 0 or ev.min() >= -tol * max(1.0, np.abs(ev).max()))

    def is_accumulative(self, Wb: np.ndarray | None = None, tol: float = 1e-12) -> bool:
        ev = self.imag_form_eigenvalues(Wb)
        return bool(ev.size == 0 or ev.max() <= tol * max(1.0, np.abs(ev).max()))

    def adjoint(self) -> "BoundaryParameter":
        """Conjugate parameter ``(X̄, Ȳ)``: dissipative <-> accumulative for real ``Wb``."""
        return BoundaryParameter(self.X.conj(), self.Y.conj(), self.kind)

    def operator_part_min_singular(self) -> float:
        """Smallest singular value of the operator part of ``Θ`` restricted to ``ran X``.

        Serves as the finite-dimensional ``0 ∉ σ_ess(Θ)`` surrogate.
        """
        if self.d == 0:
            return np.inf
        U, s, Vh = np.linalg.svd(self.X)
        r = int(np.sum(s > 1e-12 * max(1.0, s[0]))) if s.size else 0
        if r == 0:
            return np.inf
        T = self.Y @ Vh.conj().T[:, :r] / s[:r]
        return float(np.linalg.svd(T, compute_uv=False).min())


# --------------------------------------------------------------------------
# γ-field and Weyl function


@dataclass(frozen=True)
class WeylSample:
    """``γ(λ)`` (N x m), ``M(λ)`` (m x m) and optionally ``M'(λ)`` at one point."""

    lam: complex
    gamma: np.ndarray
    M: np.ndarray
    M_prime: np.ndarray | None = None

    def flux_residual(self, t: DiscreteTriple) -> float:
        """``max|(S - λW) γ - G1* Wb|``: each column solves the problem with unit flux."""
        R = t.pencil(self.lam) @ self.gamma - t.G1.conj().T @ t.Wb
        return float(np.max(np.abs(R), initial=0.0))

    def interior_residual(self, t: DiscreteTriple) -> float:
        """``max|rows_int (W (T_act - λ)) γ|`` (strong interior equation)."""
        R = t.strong_rows(self.lam) @ self.gamma
        return float(np.max(np.abs(R), initial=0.0))


def _nearest_a0(t: DiscreteTriple, lam: complex) -> complex:
    ev = t.a0_eigenvalues()
    return complex(ev[np.argmin(np.abs(ev - lam))])


def _pencil_solve(t: DiscreteTriple, lam: complex, rhs: np.ndarray) -> np.ndarray:
    try:
        return solve(t.pencil(lam), rhs)
    except IllConditionedError as exc:
        near = _nearest_a0(t, lam)
        raise EigenvalueCollision(
            f"λ = {lam} is (numerically) an eigenvalue of A0 in {t.name}; nearest {near:.6g}"
            f" (condition ~ {exc.condition:.2e})",
            nearest=near,
        ) from None


def gamma_field(t: DiscreteTriple, lam: complex, phi=None) -> np.ndarray:
    """``γ(λ) = (S - λW)^{-1} G1* Wb``, or ``γ(λ) φ`` when ``phi`` is given."""
    rhs = t.G1.conj().T @ t.Wb
    if phi is not None:
        rhs = rhs @ np.asarray(phi)
    if t.m == 0:
        return np.zeros((t.N, 0))
    return _pencil_solve(t, lam, rhs)


def gamma_adjoint(t: DiscreteTriple, lam: complex) -> np.ndarray:
    """``γ(λ̄)^* = G1 (S - λW)^{-1} W`` (m x N), the adjoint in the weighted inner products."""
    if t.m == 0:
        return np.zeros((0, t.N))
    Pinv_h = _pencil_solve(t, np.conj(lam), t.G1.conj().T)
    return Pinv_h.conj().T @ t.W


def weyl(t: DiscreteTriple, lam: complex, derivative: bool = False) -> WeylSample:
    """Weyl function ``M(λ) = G1 γ(λ)`` (a discrete Neumann-to-Dirichlet map)."""
    g = gamma_field(t, lam)
    M = t.G1 @ g
    Mp = None
    if derivative:
        Mp = gamma_adjoint(t, lam) @ g
    return WeylSample(complex(lam), g, M, Mp)


def weyl_derivative(t: DiscreteTriple, lam: complex) -> np.ndarray:
    """``M'(λ) = γ(λ̄)^* γ(λ)``."""
    if t.m == 0:
        return np.zeros((0, 0))
    return gamma_adjoint(t, lam) @ gamma_field(t, lam)


def weyl_difference_defect(t: DiscreteTriple, lam: complex, mu: complex) -> float:
    """Relative defect of ``M(λ) - M(μ)^* = (λ - μ̄) γ(μ)^* γ(λ)`` (``Wb``-adjoints)."""
    Ml = weyl(t, lam).M
    gmu = gamma_field(t, mu)
    Mmu_adj = t.adjoint_boundary(t.G1 @ gmu)
    gmu_adj = np.linalg.solve(t.Wb, gmu.conj().T @ t.W)
    rhs = (lam - np.conj(mu)) * gmu_adj @ gamma_field(t, lam)
    lhs = Ml - Mmu_adj
    return float(np.max(np.abs(lhs - rhs)) / max(np.max(np.abs(lhs)), 1e-300))


def weyl_derivative_defect(t: DiscreteTriple, lam: complex, h: float = 1e-4) -> float:
    """Relative gap between ``γ(λ̄)^* γ(λ)`` and the central difference of ``M``."""
    Mp = weyl_derivative(t, lam)
    fd = (weyl(t, lam + h).M - weyl(t, lam - h).M) / (2 * h)
    return float(np.max(np.abs(Mp - fd)) / np.max(np.abs(Mp)))


def resolvent_identity_defect(t: DiscreteTriple, lam: complex, mu: complex) -> float:
    """Defect of ``γ(λ) = (I + (λ - μ)(A0 - λ)^{-1}) γ(μ)``."""
    gl = gamma_field(t, lam)
    gm = gamma_field(t, mu)
    R0 = _pencil_solve(t, lam, t.W)
    rhs = gm + (lam - mu) * (R0 @ gm)
    return float(np.max(np.abs(gl - rhs)) / np.max(np.abs(gl)))


def a0_resolvent(t: DiscreteTriple, lam: complex) -> np.ndarray:
    """``(A0 - λ)^{-1} = (S - λW)^{-1} W``."""
    return _pencil_solve(t, lam, t.W)


# --------------------------------------------------------------------------
# realizations


@dataclass(frozen=True)
class Realization:
    """``A_Θ`` reduced to its operator part.

    Elements are ``f = Z z``; the realization acts as the pencil ``K - λ Wr``
    tested against the columns of ``L``.  For symmetric ``Θ`` one has
    ``L = Z``, ``K`` Hermitian and ``Wr = Z* W Z`` positive definite.
    """

    Z: np.ndarray
    L: np.ndarray
    K: np.ndarray
    Wr: np.ndarray
    W: np.ndarray
    symmetric: bool
    sa_check: bool
    hermitian_defect: float

    @property
    def dim(self) -> int:
        return self.K.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        """Realization matrix ``Wr^{-1} K`` in the reduced coordinates."""
        return np.linalg.solve(self.Wr, self.K)

    def eigenvalues(self) -> np.ndarray:
        if self.dim == 0:
            return np.zeros(0)
        if self.symmetric and self.sa_check:
            K = 0.5 * (self.K + self.K.conj().T)
            Wr = 0.5 * (self.Wr + self.Wr.conj().T)
            return sla.eigh(K, Wr, eigvals_only=True)
        ev = sla.eigvals(self.K, self.Wr)
        return ev[np.lexsort((ev.imag, ev.real))]

    def resolvent(self, lam: complex) -> np.ndarray:
        """``(A_Θ - λ)^{-1}`` as an N x N matrix (direct solve, no Krein formula)."""
        A = self.K - lam * self.Wr
        try:
            inner = solve(A, self.L.conj().T @ self.W)
        except IllConditionedError as exc:
            raise EigenvalueCollision(f"λ = {lam} is (numerically) an eigenvalue of A_Θ "
                                      f"(condition ~ {exc.condition:.2e})") from None
        return self.Z @ inner

    def resolvent_trace(self, lam: complex) -> complex:
        """``tr (A_Θ - λ)^{-1} = tr((K - λWr)^{-1} L* W Z)``."""
        A = self.K - lam * self.Wr
        B = self.L.conj().T @ self.W @ self.Z
        return complex(np.trace(solve(A, B)))


def realize(t: DiscreteTriple, theta: BoundaryParameter) -> Realization:
    """Reduce ``A_Θ = {f : (Γ0 f, Γ1 f) ∈ Θ}`` to a square pencil.

    The constraint ``G1 f ∈ ran Y`` defines the admissible ``f = Z z``; the
    multivalued part ``G1* Wb X ker(Y)`` is eliminated by testing only against
    its annihilator ``L``.  For symmetric ``Θ`` this annihilator is ``Z`` itself.
    """
    if theta.m != t.m:
        raise ValueError(f"parameter acts on C^{theta.m}, triple has m = {t.m}")
    if theta.d != t.m:
        raise ValueError("realize needs a maximal parameter (d = m); rank-deficient constraint")
    X, Y, Wb, G1 = theta.X, theta.Y, t.Wb, t.G1
    N = t.N
    Kmat = null_space(Y)
    Uperp = null_space(Y.conj().T)
    Z = null_space(Uperp.conj().T @ G1) if Uperp.shape[1] else np.eye(N)
    Zh = np.linalg.pinv(Y) @ (G1 @ Z)
    K1 = t.S @ Z - G1.conj().T @ Wb @ X @ Zh
    if Z.shape[1] + Kmat.shape[1] != N:
        raise ValueError("boundary constraint rows are not independent for this triple")
    symmetric = theta.is_symmetric(Wb)
    if symmetric:
        L = Z
    elif Kmat.shape[1]:
        K2 = G1.conj().T @ Wb @ X @ Kmat
        L = null_space(K2.conj().T)
    else:
        L = np.eye(N)
    K = L.conj().T @ K1
    Wr = L.conj().T @ t.W @ Z
    scale = float(np.max(np.abs(K))) if K.size else 0.0
    herm_def = float(np.max(np.abs(K - K.conj().T))) if K.size else 0.0
    sa = bool(symmetric and theta.d == t.m and herm_def <= SA_TOL * max(scale, 1e-300))
    return Realization(Z, L, K, Wr, t.W, symmetric, sa, herm_def)


def krein_resolvent(t: DiscreteTriple, theta: BoundaryParameter, lam: complex) -> np.ndarray:
    """``(A0 - λ)^{-1} + γ(λ) X (Y - M(λ) X)^{-1} γ(λ̄)^*``."""
    R0 = a0_resolvent(t, lam)
    return R0 + krein_correction(t, theta, lam, R0=R0)


def krein_correction(t: DiscreteTriple, theta: BoundaryParameter, lam: complex, R0=None) -> np.ndarray:
    """The boundary term ``γ(λ)(Θ - M(λ))^{-1} γ(λ̄)^*`` of Krein's formula."""
    if R0 is None:
        R0 = a0_resolvent(t, lam)
    g = gamma_field(t, lam)
    M = t.G1 @ g
    gstar = t.G1 @ R0
    D = theta.Y - M @ theta.X
    try:
        inner = solve(D, gstar, max_condition=MAX_CONDITION)
    except IllConditionedError as exc:
        raise EigenvalueCollision(
            f"Y - M(λ)X is singular at λ = {lam}: λ is an eigenvalue candidate of A_Θ "
            f"(condition ~ {exc.condition:.2e})"
        ) from None
    return g @ theta.X @ inner


def _phase_normalized_det(vals: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(vals)))
    phase = vals[k] / abs(vals[k])
    out = vals / phase
    scale = np.abs(out)
    if np.any(np.abs(out.imag) > 1e-6 * np.maximum(scale, 1e-300) + 1e-300):
        raise ValueError("det(Y - M(λ)X) does not have a constant phase; parameter is not self-adjoint")
    return out.real


def eigenvalues_via_weyl(t: DiscreteTriple, theta: BoundaryParameter, interval, tolerance: float = 1e-10,
                         n_samples: int = 400) -> np.ndarray:
    """Eigenvalues of ``A_Θ`` in a real interval from the zeros of ``det(Y - M(λ)X)``.

    Requires the interval to lie in the resolvent set of ``A0``; otherwise
    :class:`IntervalSplitRequired` names the points at which to split.
    Double roots (no sign change) are not detected.
    """
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise ValueError("interval must satisfy a < b")
    ev0 = t.a0_eigenvalues()
    inside = ev0[(ev0 > a) & (ev0 < b)]
    if inside.size:
        raise IntervalSplitRequired(inside)

    def det(lam):
        M = weyl(t, lam).M
        return np.linalg.det(theta.Y - M @ theta.X)

    grid = np.linspace(a, b, n_samples + 1)
    raw = np.array([det(x) for x in grid])
    phase_ref = raw[int(np.argmax(np.abs(raw)))]
    if phase_ref == 0:
        return np.zeros(0)
    vals = _phase_normalized_det(raw)
    phase = phase_ref / abs(phase_ref)

    def f(x):
        return float((det(x) / phase).real)

    roots = []
    for i in range(n_samples):
        if vals[i] == 0.0:
            roots.append(grid[i])
        elif vals[i] * vals[i + 1] < 0:
            x = brentq(f, grid[i], grid[i + 1], xtol=tolerance, rtol=4 * np.finfo(float).eps, maxiter=200)
            roots.append(x)
    return np.array(roots)


@dataclass(frozen=True)
class TraceCheck:
    lhs: complex
    rhs: complex
    defect: float


def trace_formula_check(t: DiscreteTriple, theta: BoundaryParameter, lam: complex) -> TraceCheck:
    """Compare ``tr((A_Θ-λ)^{-1} - (A0-λ)^{-1})`` with ``tr(M'(λ) X (Y - M(λ)X)^{-1})``.

    The left side uses the direct realization resolvent, the right side only
    boundary quantities.
    """
    real = realize(t, theta)
    tr0 = complex(np.trace(a0_resolvent(t, lam)))
    lhs = real.resolvent_trace(lam) - tr0
    M = weyl(t, lam).M
    Mp = weyl_derivative(t, lam)
    D = theta.Y - M @ theta.X
    rhs = complex(np.trace(Mp @ theta.X @ solve(D, np.eye(t.m))))
    return TraceCheck(lhs, rhs, abs(lhs - rhs))


def nevanlinna_check(t: DiscreteTriple, lam: complex) -> float | None:
    """Smallest eigenvalue of ``Im M(λ) / Im λ`` (``Wb``-selfadjoint part); None for real λ."""
    lam = complex(lam)
    if lam.imag == 0.0:
        return None
    M = weyl(t, lam).M
    Wb = t.Wb
    H = (Wb @ M - M.conj().T @ Wb) / (2j * lam.imag)
    H = 0.5 * (H + H.conj().T)
    return float(sla.eigh(H, Wb, eigvals_only=True).min())


@dataclass(frozen=True)
class DissipativityReport:
    dissipative: bool
    accumulative: bool
    eigenvalues: np.ndarray
    min_imag: float
    max_imag: float
    krein_lambda: complex
    krein_defect: float
    passed: bool


def dissipativity_check(t: DiscreteTriple, theta: BoundaryParameter, lam: complex | None = None,
                        tol: float = 1e-9) -> DissipativityReport:
    """Half-plane location of the spectrum of ``A_Θ`` and a Krein check off that half-plane."""
    dis = theta.is_dissipative(t.Wb)
    acc = theta.is_accumulative(t.Wb)
    if not (dis or acc):
        raise ValueError("parameter is neither dissipative nor accumulative")
    real = realize(t, theta)
    ev = real.eigenvalues()
    ev = np.asarray(ev, dtype=complex)
    if lam is None:
        lam = -1.0 - 1.0j if dis else -1.0 + 1.0j
    R_dir = real.resolvent(lam)
    R_kr = krein_resolvent(t, theta, lam)
    kdef = float(np.max(np.abs(R_dir - R_kr)) / np.max(np.abs(R_dir)))
    min_im, max_im = float(ev.imag.min()), float(ev.imag.max())
    ok = kdef <= 1e-8
    if dis:
        ok = ok and min_im >= -tol
    if acc:
        ok = ok and max_im <= tol
    return DissipativityReport(dis, acc, ev, min_im, max_im, complex(lam), kdef, bool(ok))


def krein_defect(t: DiscreteTriple, theta: BoundaryParameter, lam: complex) -> float:
    """Max-entry relative defect between the Krein and direct resolvents."""
    R_dir = realize(t, theta).resolvent(lam)
    R_kr = krein_resolvent(t, theta, lam)
    return float(np.max(np.abs(R_dir - R_kr)) / np.max(np.abs(R_kr)))


# --------------------------------------------------------------------------
# synthetic fixtures


def synthetic_triple(N: int = 8, m: int = 2, seed: int = 0, complex_valued: bool = True) -> DiscreteTriple:
    """Random exactly-Green triple with ``S ⪰ 0``, boundary supported on the last ``m`` coordinates."""
    rng = np.random.default_rng(seed)

    def rand(*shape):
        a = rng.standard_normal(shape)
        if complex_valued:
            a = a + 1j * rng.standard_normal(shape)
        return a

    A = rand(N, N)
    S = A.conj().T @ A / N
    B = rand(N, N)
    W = B.conj().T @ B / N + np.eye(N)
    C = rand(m, m)
    Wb = C.conj().T @ C / m + np.eye(m)
    G1 = np.zeros((m, N), dtype=S.dtype)
    G1[:, N - m:] = rand(m, m) + 2 * np.eye(m)
    G0 = rand(m, N)
    return DiscreteTriple.from_stiffness(S, W, Wb, G0, G1, name=f"synthetic(N={N},m={m},seed={seed})",
                                         interior_rows=np.arange(N - m))
