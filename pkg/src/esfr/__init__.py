"""Energy-stable flux reconstruction: exact operator construction,
arbitrary-precision von Neumann dispersion analysis, and superconvergence
verification for the 1D linear advection problem with an upwind flux."""

from esfr.numerics import ComplexMatrix, EigenResult, Rational, to_big
from esfr.operators import FrOperators, build_esfr, build_symmetric_fr, kappa, special_c

__all__ = [
    "ComplexMatrix",
    "EigenResult",
    "FrOperators",
    "Rational",
    "build_esfr",
    "build_symmetric_fr",
    "kappa",
    "special_c",
    "to_big",
]
