"""scikit-learn style wrappers around the triple and the scalar field.

The estimators carry only hyperparameters (``n``, ``ell``) in ``__init__``
so that ``get_params``/``set_params``/``clone`` work, and compute all
operators in ``fit``. Field batches are complex arrays of shape
``(n_samples, N+1, N+1)`` or ``(n_samples, (N+1)**2)``; the flat form uses
row-major order so that ``phi.reshape(n_samples, -1)`` round-trips.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .algebra import adjoint_eigenbasis, check_cutoff, fuzzy_sphere
from .scalar import action_closed, action_spectral
from .triple import (
    boundedness_probe,
    chirality_index,
    chirality_opposite,
    dirac_operator,
    dirac_spectrum,
    zeromode_projector,
)


def check_radius(ell) -> float:
    ell = float(ell)
    if not np.isfinite(ell) or ell <= 0:
        raise ValueError(f"ell must be a positive finite number, got {ell}")
    return ell


def check_fields(X, N: int) -> np.ndarray:
    """Validate a batch of fields and return it as ``(n_samples, N+1, N+1)`` complex."""
    X = np.asarray(X)
    if not (np.issubdtype(X.dtype, np.number) or X.dtype == bool):
        raise TypeError(f"fields must be numeric, got dtype {X.dtype}")
    X = X.astype(complex)
    n = N + 1
    if X.ndim == 2 and X.shape[1] == n * n:
        X = X.reshape(-1, n, n)
    elif X.ndim == 2 and X.shape == (n, n):
        X = X[None]
    if X.ndim != 3 or X.shape[1:] != (n, n):
        raise ValueError(
            f"expected fields of shape (n_samples, {n}, {n}) or (n_samples, {n * n}), got {np.shape(X)}"
        )
    if X.shape[0] == 0:
        raise ValueError("empty batch of fields")
    if not np.all(np.isfinite(X)):
        raise ValueError("fields contain NaN or infinity")
    return X


class FuzzyDirac(BaseEstimator):
    """Build the Dirac operator at cutoff ``n`` and measure its spectrum.

    Attributes set by ``fit``: ``sphere_``, ``dirac_``, ``chirality_``,
    ``spectrum_``, ``index_``, ``zeromode_projector_`` and ``boundedness_``.
    """

    def __init__(self, n: int = 2, ell: float = 1.0):
        self.n = n
        self.ell = ell

    def fit(self, X=None, y=None):
        N = check_cutoff(self.n)
        self.sphere_ = fuzzy_sphere(N, check_radius(self.ell))
        self.dirac_ = dirac_operator(self.sphere_)
        self.chirality_ = chirality_opposite(self.sphere_)
        self.spectrum_ = dirac_spectrum(self.sphere_, self.dirac_)
        self.index_ = chirality_index(self.chirality_)
        self.zeromode_projector_ = zeromode_projector(self.sphere_)
        self.boundedness_ = boundedness_probe(self.sphere_, self.dirac_)
        return self

    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues of ``D``."""
        check_is_fitted(self, "dirac_")
        return np.linalg.eigvalsh(self.dirac_)


class ScalarAction(TransformerMixin, BaseEstimator):
    """Map a batch of fields to their kinetic action, one column.

    ``route="closed"`` uses the commutator trace on A_N (cheap);
    ``route="spectral"`` traces ``(dphi)^+ dphi`` over the spinor space.
    """

    def __init__(self, n: int = 2, ell: float = 1.0, route: str = "closed"):
        self.n = n
        self.ell = ell
        self.route = route

    def fit(self, X=None, y=None):
        if self.route not in ("closed", "spectral"):
            raise ValueError(f"route must be 'closed' or 'spectral', got {self.route!r}")
        N = check_cutoff(self.n)
        self.sphere_ = fuzzy_sphere(N, check_radius(self.ell))
        self.dirac_ = dirac_operator(self.sphere_) if self.route == "spectral" else None
        if X is not None:
            check_fields(X, N)
        return self

    def transform(self, X):
        check_is_fitted(self, "sphere_")
        X = check_fields(X, self.sphere_.N)
        if self.route == "closed":
            values = [action_closed(self.sphere_, phi) for phi in X]
        else:
            values = [action_spectral(self.sphere_, phi, self.dirac_) for phi in X]
        return np.asarray(values).reshape(-1, 1)


class HarmonicTransform(TransformerMixin, BaseEstimator):
    """Expand fields in the fuzzy spherical harmonics ``Y_lm`` and back.

    ``transform`` returns complex coefficients of shape ``(n_samples, (N+1)**2)``
    ordered as ``labels_`` (``l`` ascending, ``m`` descending).
    """

    def __init__(self, n: int = 2, ell: float = 1.0):
        self.n = n
        self.ell = ell

    def fit(self, X=None, y=None):
        N = check_cutoff(self.n)
        self.sphere_ = fuzzy_sphere(N, check_radius(self.ell))
        self.basis_ = adjoint_eigenbasis(self.sphere_)
        self.labels_ = self.basis_.labels
        self.casimir_ = np.array([l * (l + 1) for l, _ in self.labels_], dtype=float)
        return self

    def transform(self, X):
        check_is_fitted(self, "basis_")
        X = check_fields(X, self.sphere_.N)
        return np.array([self.basis_.coefficients(phi) for phi in X])

    def inverse_transform(self, C):
        check_is_fitted(self, "basis_")
        C = np.asarray(C, dtype=complex)
        if C.ndim == 1:
            C = C[None]
        if C.shape[1] != len(self.labels_):
            raise ValueError(f"expected {len(self.labels_)} coefficients, got {C.shape[1]}")
        return np.array([self.basis_.reconstruct(c) for c in C])
