"""Persistent homology of covered point clouds via the Mayer-Vietoris
spectral sequence."""

from ._coverph import (
    ConfigError,
    CoverViolationError,
    InternalConsistencyError,
    UsageError,
    covered_persistence,
    morphism_image_kernel,
    rips_persistence,
)

__all__ = [
    "ConfigError",
    "CoverViolationError",
    "InternalConsistencyError",
    "UsageError",
    "covered_persistence",
    "morphism_image_kernel",
    "rips_persistence",
]
