"""Exception types shared across the package."""

from __future__ import annotations

import numpy as np


class NotHermitianError(ValueError):
    """Input was expected to be Hermitian but is not."""

    def __init__(self, residual: float, scale: float):
        self.residual = residual
        self.scale = scale
        super().__init__(
            f"matrix is not Hermitian: max|A - A*| = {residual:.3e} "
            f"(max|A| = {scale:.3e})"
        )


class ConvergenceError(RuntimeError):
    """An iterative routine ran out of sweeps."""


class IllConditionedError(np.linalg.LinAlgError):
    """A linear system is singular or too ill-conditioned to trust."""

    def __init__(self, condition: float, message: str | None = None):
        self.condition = condition
        super().__init__(message or f"ill-conditioned system (condition ~ {condition:.3e})")


class EigenvalueCollision(ValueError):
    """A spectral point hits (or nearly hits) an eigenvalue."""

    def __init__(self, message: str, nearest: complex | None = None, mode: int | None = None):
        self.nearest = nearest
        self.mode = mode
        super().__init__(message)


class IntervalSplitRequired(ValueError):
    """A root search interval contains poles and has to be split there."""

    def __init__(self, points):
        self.points = list(points)
        pts = ", ".join(f"{p:.6g}" for p in self.points)
        super().__init__(f"interval contains reference eigenvalues at {pts}; split it there")


class SchemaError(ValueError):
    """A case file does not match the documented schema."""
