"""Exact integral Chern character and Todd class calculus, with machine
checks of the integral Grothendieck-Riemann-Roch identities on projective
spaces, their products and split projective bundles."""
from __future__ import annotations

from .arith import bernoulli, factorial, jam_constant, scaling_constants
from .report import PreconditionError, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "PreconditionError",
    "VerificationReport",
    "bernoulli",
    "factorial",
    "jam_constant",
    "scaling_constants",
]
