"""Discrete boundary triples, Weyl functions, Krein resolvents and singular-value decay.

Subpackages and modules
-----------------------
numerics  dense linear algebra, quadrature, ODE and modified Bessel kernels
triple    the engine: triples, boundary relations, Weyl functions, realizations
ideals    decay fits, Schatten sums and ideal-product checks
sl1d      Sturm-Liouville model on an interval
disk2d    Laplacian on the unit disk, per Fourier mode
delta2d   δ and δ' interactions on the unit circle
io        JSON case files and serialization
suite     acceptance reference cases
cli       batch command line
"""

from __future__ import annotations

from .errors import (
    ConvergenceError,
    EigenvalueCollision,
    IllConditionedError,
    IntervalSplitRequired,
    NotHermitianError,
    SchemaError,
)
from .triple import (
    BoundaryParameter,
    DiscreteTriple,
    Realization,
    WeylSample,
    dissipativity_check,
    eigenvalues_via_weyl,
    gamma_field,
    green_residual,
    krein_resolvent,
    nevanlinna_check,
    realize,
    synthetic_triple,
    trace_formula_check,
    weyl,
)
from .ideals import SingularSpectrum, fit_decay, product_law_test, schatten_sum

__version__ = "0.1.0"

__all__ = [
    "BoundaryParameter", "ConvergenceError", "DiscreteTriple", "EigenvalueCollision", "IllConditionedError",
    "IntervalSplitRequired", "NotHermitianError", "Realization", "SchemaError", "SingularSpectrum",
    "WeylSample", "dissipativity_check", "eigenvalues_via_weyl", "fit_decay", "gamma_field", "green_residual",
    "krein_resolvent", "nevanlinna_check", "product_law_test", "realize", "schatten_sum", "synthetic_triple",
    "trace_formula_check", "weyl",
]
