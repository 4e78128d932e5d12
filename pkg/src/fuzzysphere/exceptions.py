"""Exception types raised by fuzzysphere."""

import numpy as np


class ContractViolationError(ValueError):
    """An input violates a numerical precondition (e.g. a non-Hermitian matrix)."""


class DegenerateSpectrumError(RuntimeError):
    """Eigenvalues could not be grouped unambiguously."""

    def __init__(self, message, eigenvalues=None):
        super().__init__(message)
        self.eigenvalues = None if eigenvalues is None else np.asarray(eigenvalues)


class InternalConsistencyError(RuntimeError):
    """A derived structure has the wrong shape, e.g. a multiplet of the wrong size."""


class UnstableRankError(RuntimeError):
    """A sampled rank differs between seeds."""

    def __init__(self, message, per_seed=None):
        super().__init__(message)
        self.per_seed = per_seed or {}
