"""Nonlinear coherent states of the generalized isotonic oscillator.

Deformed ladder algebra on a shifted truncated Fock basis, position-space
eigenfunctions, coherent states, non-classicality witnesses and phase-space
distributions.
"""

from .errors import (
    DomainError,
    IsoNLCSError,
    RangeError,
    TruncationError,
    UnsupportedStateError,
    UsageError,
)
from .fockspace import TruncatedBasis
from .kernels import BACKEND
from .states import StateVector, canonical_build, fock_state, nlcs_build

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DomainError",
    "IsoNLCSError",
    "RangeError",
    "StateVector",
    "TruncatedBasis",
    "TruncationError",
    "UnsupportedStateError",
    "UsageError",
    "canonical_build",
    "fock_state",
    "nlcs_build",
]
