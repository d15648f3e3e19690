"""Regularized determinant G_K(s) of the Riemann operator on higher K-groups."""

from .numerics import DomainError, PoleError, PrecisionContext, PrecisionError
from .regprod import G_K_closed, G_K_def, RegZetaKind, Signature
from .symbolic import ExactValue, G_K_exact, classify, render

__all__ = [
    "DomainError",
    "ExactValue",
    "G_K_closed",
    "G_K_def",
    "G_K_exact",
    "PoleError",
    "PrecisionContext",
    "PrecisionError",
    "RegZetaKind",
    "Signature",
    "classify",
    "render",
]
