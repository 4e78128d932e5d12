"""The fuzzy sphere algebra A_N and its harmonic basis.

The coordinates are rescaled spin-N/2 generators, ``x_i = alpha * L_i`` with
``alpha = 2 ell / sqrt(N (N + 2))``, so that ``[x_i, x_j] = i alpha eps_ijk x_k``
and ``x_i x_i = ell**2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import cluster_sorted, hermitian_eigensystem, unflatten
from .exceptions import InternalConsistencyError

#: Levi-Civita symbol as a dense 3x3x3 array.
LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_i, _k, _j] = -1.0

#: Nonzero entries of the Levi-Civita symbol as ``(i, j, k, sign)``.
EPSILON_TERMS = tuple(
    (i, j, k, LEVI_CIVITA[i, j, k])
    for i in range(3)
    for j in range(3)
    for k in range(3)
    if LEVI_CIVITA[i, j, k] != 0
)


def check_cutoff(N) -> int:
    if isinstance(N, bool) or int(N) != N:
        raise ValueError(f"cutoff N must be an integer, got {N!r}")
    N = int(N)
    if N < 1:
        raise ValueError(f"cutoff N must be >= 1 (alpha is singular at N = 0), got {N}")
    return N


def su2_generators(N: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-N/2 generators in the L_3-diagonal basis with Condon-Shortley phases.

    ``L_3 = diag(j, j-1, ..., -j)`` and ``L_+`` has the non-negative entries
    ``sqrt(j(j+1) - m(m+1))`` on its first superdiagonal.
    """
    N = check_cutoff(N)
    j = N / 2
    m = j - np.arange(N + 1)
    raising = np.diag(np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1)), 1).astype(complex)
    lowering = raising.conj().T
    L1 = (raising + lowering) / 2
    L2 = (raising - lowering) / 2j
    L3 = np.diag(m).astype(complex)
    return L1, L2, L3


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FuzzySphere:
    """Cutoff ``N``, radius ``ell`` and the coordinate matrices of A_N."""

    N: int
    ell: float
    alpha: float
    x: tuple = field(repr=False)
    L: tuple = field(repr=False)

    @property
    def dim(self) -> int:
        """Size of the matrices in A_N."""
        return self.N + 1

    @property
    def casimir(self) -> float:
        return (self.N / 2) * (self.N / 2 + 1)

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.N + 1, dtype=complex)


def fuzzy_sphere(N: int, ell: float = 1.0) -> FuzzySphere:
    N = check_cutoff(N)
    ell = float(ell)
    if not ell > 0:
        raise ValueError(f"radius ell must be positive, got {ell}")
    alpha = 2 * ell / np.sqrt(N * (N + 2))
    L = su2_generators(N)
    return FuzzySphere(
        N=N,
        ell=ell,
        alpha=alpha,
        x=tuple(_frozen(alpha * Li) for Li in L),
        L=tuple(_frozen(Li) for Li in L),
    )


def adjoint_generators(s: FuzzySphere) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``ad L_i`` acting on column-stacked (N+1)x(N+1) matrices."""
    eye = np.eye(s.dim)
    return tuple(np.kron(eye, Li) - np.kron(Li.T, eye) for Li in s.L)


@dataclass(frozen=True, eq=False)
class AdjointEigenbasis:
    """Fuzzy spherical harmonics ``Y_lm``, orthonormal under ``Tr(A^+ B)/(N+1)``."""

    N: int
    labels: tuple
    matrices: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        for (l, m), Y in zip(self.labels, self.matrices):
            yield l, m, Y

    def inner(self, a, b) -> complex:
        return np.trace(np.conj(a).T @ b) / (self.N + 1)

    def gram(self) -> np.ndarray:
        flat = self.matrices.reshape(len(self), -1)
        return flat.conj() @ flat.T / (self.N + 1)

    def coefficients(self, phi) -> np.ndarray:
        """Expansion coefficients ``c_lm = <Y_lm, phi>`` in label order."""
        phi = np.asarray(phi, dtype=complex)
        flat = self.matrices.reshape(len(self), -1)
        return flat.conj() @ phi.reshape(-1) / (self.N + 1)

    def reconstruct(self, coefficients) -> np.ndarray:
        c = np.asarray(coefficients, dtype=complex)
        return np.tensordot(c, self.matrices, axes=1)

    def index(self, l: int, m: int) -> int:
        return self.labels.index((l, m))


def adjoint_eigenbasis(s: FuzzySphere) -> AdjointEigenbasis:
    """Diagonalize the adjoint Casimir and ``ad L_3`` on the space of matrices.

    Each spin-l multiplet is seeded with its normalized highest-weight matrix,
    whose phase makes the ``(0, l)`` entry real positive, and filled in with
    the adjoint lowering operator. With that choice ``ad L_-`` has non-negative
    real matrix elements between successive ``m``.
    """
    n = s.dim
    ad1, ad2, ad3 = adjoint_generators(s)
    ad_minus = ad1 - 1j * ad2
    casimir = ad1 @ ad1 + ad2 @ ad2 + ad3 @ ad3
    w, v = hermitian_eigensystem(casimir)
    clusters = cluster_sorted(w, 1e-8 * max(1.0, abs(w[-1])))
    if len(clusters) != s.N + 1:
        raise InternalConsistencyError(
            f"expected {s.N + 1} adjoint Casimir eigenvalues, found {len(clusters)}"
        )

    labels, matrices = [], []
    for l, idx in enumerate(clusters):
        if len(idx) != 2 * l + 1 or abs(w[idx].mean() - l * (l + 1)) > 1e-8 * (l + 1) ** 2:
            raise InternalConsistencyError(
                f"adjoint Casimir cluster {l}: size {len(idx)}, mean {w[idx].mean()}"
            )
        sub = v[:, idx]
        mw, mv = hermitian_eigensystem(sub.conj().T @ ad3 @ sub)
        top = sub @ mv[:, -1]
        if abs(mw[-1] - l) > 1e-8 * (l + 1):
            raise InternalConsistencyError(f"highest weight of spin {l} is {mw[-1]}")
        anchor = unflatten(top, n, n)[0, l]
        if abs(anchor) < 1e-12:
            anchor = top[np.argmax(np.abs(top))]
        top = top * (abs(anchor) / anchor)
        vec = top / np.linalg.norm(top)
        for m in range(l, -l - 1, -1):
            labels.append((l, m))
            matrices.append(unflatten(vec, n, n) * np.sqrt(n))
            if m > -l:
                vec = ad_minus @ vec / np.sqrt(l * (l + 1) - m * (m - 1))

    mats = np.array(matrices)
    mats.setflags(write=False)
    return AdjointEigenbasis(N=s.N, labels=tuple(labels), matrices=mats)


def clock_shift(N: int) -> tuple[np.ndarray, np.ndarray, complex]:
    """Clock ``S = diag(q**k)`` and cyclic shift ``T`` obeying ``S T = q T S``.

    ``q = exp(2 pi i / (N + 1))``; ``T`` maps basis vector ``e_k`` to
    ``e_{k+1 mod N+1}``.
    """
    N = check_cutoff(N)
    n = N + 1
    q = np.exp(2j * np.pi / n)
    S = np.diag(q ** np.arange(n))
    T = np.roll(np.eye(n, dtype=complex), 1, axis=0)
    return S, T, q
