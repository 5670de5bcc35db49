"""Exact and simulated statistics of the entanglement entropy of random bipartite pure states."""

from .cumulants import (
    CumulantSet,
    Dims,
    cumulant_set,
    kappa1,
    kappa2,
    kappa3,
    kappa3_via_T,
    skewness,
)
from .exact import PolyValue

__all__ = [
    "CumulantSet",
    "Dims",
    "PolyValue",
    "cumulant_set",
    "kappa1",
    "kappa2",
    "kappa3",
    "kappa3_via_T",
    "skewness",
]
__version__ = "0.1.0"
