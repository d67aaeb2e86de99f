"""Negative eigenvalue counts for radial delta-shell Schroedinger operators."""

from ._core import (
    CountResult,
    Error,
    channel_multiplicity,
    count,
    effective_l,
    green_kernel,
    kappa_matrix,
    oscillation_count,
    phi,
    psi,
    total,
)

__all__ = [
    "CountResult",
    "Error",
    "channel_multiplicity",
    "count",
    "effective_l",
    "green_kernel",
    "kappa_matrix",
    "oscillation_count",
    "phi",
    "psi",
    "total",
]
