"""Numerical kernel: dense linear algebra, quadrature, ODEs, Bessel functions."""

from .bessel import BesselEval, bessel_I, bessel_K, bessel_i_ratios, bessel_k_ratios, reduced_i_series
from .linalg import (
    condition_estimate,
    hermitian_eig,
    is_hermitian,
    jacobi_eigh,
    jacobi_svd,
    null_space,
    singular_values,
    solve,
    svd,
)
from .ode import BoundaryCondition, bessel_riccati_weyl, ode_solve_bvp, rk4_ivp
from .quadrature import QuadratureRule, composite_gauss_legendre, gauss_legendre, graded_rule, integrate_radial, uniform_rule

__all__ = [
    "BesselEval",
    "BoundaryCondition",
    "QuadratureRule",
    "bessel_I",
    "bessel_K",
    "bessel_i_ratios",
    "bessel_k_ratios",
    "bessel_riccati_weyl",
    "composite_gauss_legendre",
    "condition_estimate",
    "gauss_legendre",
    "graded_rule",
    "hermitian_eig",
    "integrate_radial",
    "is_hermitian",
    "jacobi_eigh",
    "jacobi_svd",
    "null_space",
    "ode_solve_bvp",
    "reduced_i_series",
    "rk4_ivp",
    "singular_values",
    "solve",
    "svd",
    "uniform_rule",
]
