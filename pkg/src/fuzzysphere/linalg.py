"""Dense complex-matrix helpers shared by every other module.

Flattening uses column stacking, so that ``flatten(a @ psi @ b)`` equals
``kron(b.T, a) @ flatten(psi)``.
"""

from __future__ import annotations

import numpy as np

from .exceptions import ContractViolationError, DegenerateSpectrumError

#: Hermiticity tolerance (relative) accepted by :func:`hermitian_eigensystem`.
HERMITIAN_TOL = 1e-10


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {arr.shape}")
    return arr


def scale(m: np.ndarray) -> float:
    """Reference magnitude ``max(1, max|m|)`` for relative tolerances."""
    if m.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(m))))


def max_abs(m) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m))) if m.size else 0.0


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def _check_square_pair(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise ValueError(
            f"commutator needs square matrices of equal size, got {a.shape} and {b.shape}"
        )


def commutator(a, b) -> np.ndarray:
    a, b = as_matrix(a, "a"), as_matrix(b, "b")
    _check_square_pair(a, b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    a, b = as_matrix(a, "a"), as_matrix(b, "b")
    _check_square_pair(a, b)
    return a @ b + b @ a


def dagger(m) -> np.ndarray:
    return as_matrix(m).conj().T


def is_hermitian(h, tol: float = HERMITIAN_TOL) -> bool:
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        return False
    return max_abs(h - h.conj().T) <= tol * scale(h)


def hermitian_eigensystem(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.

    The input is symmetrized as ``(h + h†)/2`` before solving. Inputs that
    are not Hermitian to within ``1e-10 * max(1, max|h|)`` raise
    :class:`ContractViolationError`.
    """
    h = as_matrix(h, "h")
    if h.shape[0] != h.shape[1]:
        raise ContractViolationError(f"eigensystem of non-square matrix {h.shape}")
    deviation = max_abs(h - h.conj().T)
    if deviation > HERMITIAN_TOL * scale(h):
        raise ContractViolationError(
            f"matrix is not Hermitian: max|h - h^+| = {deviation:.3e}"
        )
    w, v = np.linalg.eigh((h + h.conj().T) / 2)
    return w, v


def hermitian_eigenvalues(h) -> np.ndarray:
    h = as_matrix(h, "h")
    deviation = max_abs(h - h.conj().T)
    if h.shape[0] != h.shape[1] or deviation > HERMITIAN_TOL * scale(h):
        raise ContractViolationError(
            f"matrix is not Hermitian: max|h - h^+| = {deviation:.3e}"
        )
    return np.linalg.eigvalsh((h + h.conj().T) / 2)


def flatten(m) -> np.ndarray:
    """Column-stack ``m`` into a vector: ``[[1, 2], [3, 4]] -> (1, 3, 2, 4)``."""
    return as_matrix(m).reshape(-1, order="F")


def unflatten(v, rows: int, cols: int) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != rows * cols:
        raise ValueError(f"cannot reshape vector of length {v.size} to {rows}x{cols}")
    return v.reshape((rows, cols), order="F")


def cluster_sorted(values, gap_tol: float, ambiguity: float = 10.0) -> list[np.ndarray]:
    """Group ascending ``values`` into runs whose consecutive gaps are <= ``gap_tol``.

    Returns one index array per cluster. A gap that falls in
    ``(gap_tol, ambiguity * gap_tol]`` makes the split ambiguous and raises
    :class:`DegenerateSpectrumError` carrying the raw values.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return []
    if np.any(np.diff(values) < 0):
        raise ValueError("values must be sorted ascending")
    gaps = np.diff(values)
    ambiguous = (gaps > gap_tol) & (gaps <= ambiguity * gap_tol)
    if np.any(ambiguous):
        raise DegenerateSpectrumError(
            f"ambiguous eigenvalue gap(s) {gaps[ambiguous]} near tolerance {gap_tol:.1e}",
            values,
        )
    breaks = np.flatnonzero(gaps > gap_tol) + 1
    return np.split(np.arange(values.size), breaks)


def numerical_rank(m, rtol: float = 1e-9) -> int:
    """Number of singular values above ``rtol`` times the largest."""
    m = np.asarray(m)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def null_space(m, rtol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical kernel of ``m``."""
    m = np.asarray(m)
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    rank = int(np.count_nonzero(s > rtol * s[0])) if s.size and s[0] > 0 else 0
    return vh[rank:].conj().T


def spectral_norm(m) -> float:
    return float(np.linalg.norm(np.asarray(m), 2))
