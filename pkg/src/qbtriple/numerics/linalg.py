"""Dense linear algebra: Hermitian eigenproblems, SVD and guarded solves.

Two routes are provided for the spectral decompositions.  The cyclic
Jacobi routines (:func:`jacobi_eigh`, :func:`jacobi_svd`) are self-contained
and resolve small singular values to high relative accuracy; the LAPACK
routes are used for large matrices.  ``method="auto"`` picks Jacobi up to
:data:`JACOBI_MAX_DIM` and LAPACK above.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as sla

from ..errors import ConvergenceError, IllConditionedError, NotHermitianError

JACOBI_MAX_DIM = 64
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 60
MAX_CONDITION = 1e12


def hermitian_residual(A: np.ndarray) -> float:
    A = np.asarray(A)
    if A.size == 0:
        return 0.0
    return float(np.max(np.abs(A - A.conj().T)))


def is_hermitian(A: np.ndarray, rtol: float = 1e-13) -> bool:
    """Hermitian flag: ``max|A - A*| <= rtol * max|A|``."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    if A.size == 0:
        return True
    return hermitian_residual(A) <= rtol * float(np.max(np.abs(A)))


def _check_finite(A: np.ndarray) -> None:
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")


def _jacobi_rotation(app: float, aqq: float, apq: complex):
    """Unitary 2x2 factor ``[[c, s], [-s*conj(e), c*conj(e)]]`` annihilating apq."""
    mag = abs(apq)
    e = apq / mag
    zeta = (aqq - app) / (2.0 * mag)
    t = np.copysign(1.0, zeta) / (abs(zeta) + np.hypot(1.0, zeta))
    c = 1.0 / np.hypot(1.0, t)
    return c, t * c, e


def jacobi_eigh(A: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi eigen-decomposition of a Hermitian matrix.

    Returns ascending eigenvalues and the unitary matrix of eigenvectors.
    """
    A = np.array(A, dtype=complex if np.iscomplexobj(A) else float)
    n = A.shape[0]
    V = np.eye(n, dtype=A.dtype)
    scale = np.max(np.abs(A)) if n else 0.0
    if scale == 0.0:
        return np.zeros(n), V
    for _ in range(max_sweeps):
        off = np.max(np.abs(A - np.diag(np.diag(A))))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300 or abs(apq) <= 1e-3 * tol * scale:
                    continue
                c, s, e = _jacobi_rotation(A[p, p].real, A[q, q].real, apq)
                eb = np.conj(e)
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * cp - s * eb * cq
                A[:, q] = s * cp + c * eb * cq
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * e * rq
                A[q, :] = s * rp + c * e * rq
                A[p, q] = A[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * eb * vq
                V[:, q] = s * vp + c * eb * vq
    else:
        off = np.max(np.abs(A - np.diag(np.diag(A))))
        if off > tol * scale:
            raise ConvergenceError(f"Jacobi eigensolver: off-diagonal {off:.3e} after {max_sweeps} sweeps")
    w = np.real(np.diag(A))
    order = np.argsort(w)
    return w[order], V[:, order]


def hermitian_eig(A: np.ndarray, B: np.ndarray | None = None, method: str = "auto", rtol: float = 1e-13):
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.

    With ``B`` given, solves the generalized problem ``A v = w B v`` for
    Hermitian positive definite ``B`` (LAPACK only); eigenvectors are then
    ``B``-orthonormal.
    """
    A = np.asarray(A)
    _check_finite(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("hermitian_eig needs a square matrix")
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    res = hermitian_residual(A)
    if res > rtol * max(scale, 1e-300) and res > 0.0:
        raise NotHermitianError(res, scale)
    A = 0.5 * (A + A.conj().T)
    if B is not None:
        B = np.asarray(B)
        return sla.eigh(A, 0.5 * (B + B.conj().T))
    if method == "jacobi" or (method == "auto" and A.shape[0] <= JACOBI_MAX_DIM):
        return jacobi_eigh(A)
    return sla.eigh(A)


def jacobi_svd(A: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """One-sided (Hestenes) Jacobi SVD: ``A = U diag(s) Vh`` with s descending."""
    A = np.asarray(A)
    transpose = A.shape[0] < A.shape[1]
    G = np.array(A.conj().T if transpose else A, dtype=complex if np.iscomplexobj(A) else float)
    m, n = G.shape
    V = np.eye(n, dtype=G.dtype)
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                gp, gq = G[:, p], G[:, q]
                alpha = np.vdot(gp, gp).real
                beta = np.vdot(gq, gq).real
                gamma = np.vdot(gp, gq)
                if abs(gamma) <= tol * np.sqrt(alpha * beta) or abs(gamma) == 0.0:
                    continue
                rotated = True
                c, s, e = _jacobi_rotation(alpha, beta, gamma)
                eb = np.conj(e)
                cp, cq = gp.copy(), gq.copy()
                G[:, p] = c * cp - s * eb * cq
                G[:, q] = s * cp + c * eb * cq
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * eb * vq
                V[:, q] = s * vp + c * eb * vq
        if not rotated:
            break
    else:
        raise ConvergenceError(f"one-sided Jacobi SVD did not converge in {max_sweeps} sweeps")
    s = np.linalg.norm(G, axis=0)
    order = np.argsort(-s, kind="stable")
    s = s[order]
    G = G[:, order]
    V = V[:, order]
    U = np.zeros_like(G)
    nz = s > 0
    U[:, nz] = G[:, nz] / s[nz]
    if transpose:
        return V, s, U.conj().T
    return U, s, V.conj().T


def svd(A: np.ndarray, method: str = "auto"):
    """Thin SVD ``A = U diag(s) Vh`` with singular values in decreasing order."""
    A = np.asarray(A)
    _check_finite(A)
    if A.size == 0:
        k = min(A.shape)
        return np.zeros((A.shape[0], k)), np.zeros(k), np.zeros((k, A.shape[1]))
    if method == "jacobi" or (method == "auto" and min(A.shape) <= JACOBI_MAX_DIM):
        return jacobi_svd(A)
    # gesvd bidiagonalizes A directly; A*A is never formed.
    return sla.svd(A, full_matrices=False, lapack_driver="gesvd")


def singular_values(A: np.ndarray, method: str = "auto") -> np.ndarray:
    return svd(A, method=method)[1]


def condition_estimate(A: np.ndarray) -> float:
    """1-norm condition estimate from an LU factorization (LAPACK ``gecon``)."""
    A = np.asarray(A)
    lu, piv = sla.lu_factor(A, check_finite=False)
    return _cond_from_lu(A, lu)


def _cond_from_lu(A, lu) -> float:
    anorm = np.linalg.norm(A, 1)
    if anorm == 0.0:
        return np.inf
    gecon = sla.get_lapack_funcs("gecon", (lu,))
    rcond, info = gecon(lu, anorm, norm="1")
    if rcond == 0.0 or not np.isfinite(rcond):
        return np.inf
    return 1.0 / rcond


def solve(A: np.ndarray, B: np.ndarray, max_condition: float = MAX_CONDITION) -> np.ndarray:
    """Solve ``A X = B``; raises :class:`IllConditionedError` above ``max_condition``."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("solve needs a square coefficient matrix")
    _check_finite(A)
    _check_finite(B)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        try:
            lu, piv = sla.lu_factor(A, check_finite=False)
        except (np.linalg.LinAlgError, ValueError):
            raise IllConditionedError(np.inf) from None
    cond = _cond_from_lu(A, lu)
    if not cond < max_condition:
        raise IllConditionedError(cond)
    return sla.lu_solve((lu, piv), B, check_finite=False)


def null_space(A: np.ndarray, rcond: float = 1e-12) -> np.ndarray:
    """Orthonormal basis of ``ker A`` (columns)."""
    A = np.asarray(A)
    if A.shape[0] == 0:
        return np.eye(A.shape[1], dtype=A.dtype if np.iscomplexobj(A) else float)
    return sla.null_space(A, rcond=rcond)


def matrix_rank(A: np.ndarray, rtol: float = 1e-12) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    s = sla.svdvals(A)
    return int(np.sum(s > rtol * s[0])) if s[0] > 0 else 0
