"""Spectral triple (A_N, D, H_N) of the fuzzy sphere.

Spinors live in C^2 (x) M_{N+1}, flattened by column stacking; every spinor
operator is ``sum kron(2x2 spin block, bimodule block)`` with the spin factor
first. Left multiplication by ``a`` is ``kron(I, a)`` and right multiplication
by ``b`` is ``kron(b.T, I)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import EPSILON_TERMS, FuzzySphere, LEVI_CIVITA
from .exceptions import DegenerateSpectrumError, InternalConsistencyError
from .linalg import as_matrix, cluster_sorted, hermitian_eigensystem, hermitian_eigenvalues

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
for _s in PAULI:
    _s.setflags(write=False)


def _square(a, name: str) -> np.ndarray:
    a = as_matrix(a, name)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    return a


def lift_left(a) -> np.ndarray:
    """Bimodule operator ``psi -> a psi``."""
    a = _square(a, "a")
    return np.kron(np.eye(a.shape[0]), a)


def lift_right(b) -> np.ndarray:
    """Bimodule operator ``psi -> psi b``; note ``lift_right(a) lift_right(b) = lift_right(b a)``."""
    b = _square(b, "b")
    return np.kron(b.T, np.eye(b.shape[0]))


def spinor(m) -> np.ndarray:
    """Embed a bimodule operator into the spinor space as ``1 (x) m``."""
    return np.kron(np.eye(2), as_matrix(m))


def sigma(i: int, dim: int) -> np.ndarray:
    """Pauli matrix ``sigma_i`` (0-based) acting on the spin factor of a spinor space of bimodule size ``dim``."""
    return np.kron(PAULI[i], np.eye(dim))


def hilbert_dim(s: FuzzySphere) -> int:
    return 2 * s.dim**2


def normalization(s: FuzzySphere) -> float:
    """Normalization of both chirality operators, ``(alpha / 2) (N + 1)``."""
    return s.alpha / 2 * (s.N + 1)


def chirality_opposite(s: FuzzySphere) -> np.ndarray:
    """Chirality built from right multiplication; commutes with every ``lift_left(a)``."""
    body = sum(np.kron(PAULI[i], lift_right(s.x[i])) for i in range(3))
    return (body - s.alpha / 2 * np.eye(hilbert_dim(s))) / normalization(s)


def chirality_left(s: FuzzySphere) -> np.ndarray:
    body = sum(np.kron(PAULI[i], lift_left(s.x[i])) for i in range(3))
    return (body + s.alpha / 2 * np.eye(hilbert_dim(s))) / normalization(s)


def cross_factor(s: FuzzySphere) -> np.ndarray:
    """``eps_ijk sigma_i x_j^o x_k``; anticommutes with both chirality operators.

    ``D`` itself only anticommutes with ``gamma^o``: ``{gamma, D} = [gamma, gamma^o] E``
    and the two chiralities do not commute.
    """
    # lift_right(x_j) lift_left(x_k) = kron(x_j^T, x_k)
    return sum(
        sign * np.kron(PAULI[i], np.kron(s.x[j].T, s.x[k])) for i, j, k, sign in EPSILON_TERMS
    )


def dirac_operator(s: FuzzySphere) -> np.ndarray:
    """``D = i/(ell alpha) gamma^o eps_ijk sigma_i x_j^o x_k``."""
    return 1j / (s.ell * s.alpha) * chirality_opposite(s) @ cross_factor(s)


def orbital_angular_momentum(s: FuzzySphere) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Adjoint action ``psi -> [x_i, psi]/alpha`` on spinors."""
    return tuple(spinor(lift_left(Li) - lift_right(Li)) for Li in s.L)


def total_angular_momentum(s: FuzzySphere) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n2 = s.dim**2
    return tuple(
        Li + 0.5 * sigma(i, n2) for i, Li in enumerate(orbital_angular_momentum(s))
    )


def total_angular_momentum_squared(s: FuzzySphere) -> np.ndarray:
    return sum(Ji @ Ji for Ji in total_angular_momentum(s))


def chi_operators(s: FuzzySphere, literal: bool = False) -> tuple[np.ndarray, ...]:
    """The operators ``chi_i`` entering the angular-momentum form of ``D``.

    The default is ``chi_i = eps_ijk sigma_j x_k``. ``literal=True`` gives the
    opposite ordering ``eps_ijk x_j sigma_k = -chi_i``, for which the
    angular-momentum form reproduces ``-D`` instead of ``D``.
    """
    n2 = s.dim**2
    out = []
    for i in range(3):
        acc = np.zeros((2 * n2, 2 * n2), dtype=complex)
        for j in range(3):
            for k in range(3):
                sign = LEVI_CIVITA[i, j, k]
                if not sign:
                    continue
                if literal:
                    acc += sign * spinor(lift_left(s.x[j])) @ sigma(k, n2)
                else:
                    acc += sign * sigma(j, n2) @ spinor(lift_left(s.x[k]))
        out.append(acc)
    return tuple(out)


def _chi_dot_j(s: FuzzySphere, literal: bool = False) -> np.ndarray:
    J = total_angular_momentum(s)
    return sum(c @ Ji for c, Ji in zip(chi_operators(s, literal), J))


def dirac_operator_adjoint_form(s: FuzzySphere, literal: bool = False) -> np.ndarray:
    """``D`` rebuilt as ``(i/ell) gamma^o chi_i J_i``; equals :func:`dirac_operator`."""
    return 1j / s.ell * chirality_opposite(s) @ _chi_dot_j(s, literal)


def dirac_operator_left(s: FuzzySphere) -> np.ndarray:
    """Comparison operator with ``gamma^o`` replaced by the left chirality."""
    return 1j / s.ell * chirality_left(s) @ _chi_dot_j(s)


def hilbert_trace(a, b) -> complex:
    """Trace over H_N of ``a b^o``, i.e. ``2 Tr(a) Tr(b)``."""
    a, b = _square(a, "a"), _square(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return 2 * np.trace(a) * np.trace(b)


def hilbert_trace_direct(a, b) -> complex:
    a, b = _square(a, "a"), _square(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return np.trace(spinor(lift_left(a) @ lift_right(b)))


def lambda_sq_formula(j, N: int) -> float:
    """Closed-form eigenvalue of ``D**2`` on the spin-j multiplet."""
    k = float(j) + 0.5
    return k * k * (1 + (1 - k * k) / (N * (N + 2)))


def expected_degeneracy(j, N: int) -> int:
    j = Fraction(j)
    if j == Fraction(2 * N + 1, 2):
        return 2 * N + 2
    return int(2 * (2 * j + 1))


@dataclass(frozen=True)
class SpectrumGroup:
    j: Fraction
    lambda_sq_measured: float
    lambda_sq_formula: float
    degeneracy: int

    @property
    def residual(self) -> float:
        return abs(self.lambda_sq_measured - self.lambda_sq_formula)


@dataclass(frozen=True)
class SpectrumReport:
    N: int
    ell: float
    groups: tuple = field(default_factory=tuple)

    @property
    def max_residual(self) -> float:
        return max(g.residual for g in self.groups)

    @property
    def total_degeneracy(self) -> int:
        return sum(g.degeneracy for g in self.groups)

    def group(self, j) -> SpectrumGroup:
        j = Fraction(j)
        for g in self.groups:
            if g.j == j:
                return g
        raise KeyError(j)


def _j_from_casimir(value: float) -> Fraction:
    j = (-1 + np.sqrt(1 + 4 * max(value, 0.0))) / 2
    twice = round(2 * j)
    if abs(2 * j - twice) > 1e-6:
        raise DegenerateSpectrumError(f"J^2 eigenvalue {value} is not j(j+1)", [value])
    return Fraction(twice, 2)


def dirac_spectrum(s: FuzzySphere, D: np.ndarray | None = None) -> SpectrumReport:
    """Eigenvalues of ``D**2`` grouped into spin-j multiplets.

    ``D**2`` is diagonalized and its eigenvalues clustered with gap tolerance
    ``1e-8 * max eigenvalue``. Each cluster is then split by diagonalizing
    ``J**2`` inside it, which separates accidental coincidences between
    different j. The measured value for a multiplet is the mean of ``D**2``
    restricted to it.
    """
    if D is None:
        D = dirac_operator(s)
    D2 = D @ D
    w, v = hermitian_eigensystem(D2)
    J2 = total_angular_momentum_squared(s)
    clusters = cluster_sorted(w, 1e-8 * max(1.0, abs(w).max()))

    found: dict[Fraction, tuple[float, int]] = {}
    for idx in clusters:
        sub = v[:, idx]
        jw, jv = hermitian_eigensystem(sub.conj().T @ J2 @ sub)
        for jidx in cluster_sorted(jw, 1e-6):
            j = _j_from_casimir(jw[jidx].mean())
            if j in found:
                raise DegenerateSpectrumError(f"spin {j} split across eigenvalue clusters", w)
            block = sub @ jv[:, jidx]
            measured = float(np.real(np.trace(block.conj().T @ D2 @ block))) / len(jidx)
            found[j] = (measured, len(jidx))

    groups = []
    for j in sorted(found):
        measured, deg = found[j]
        if j < Fraction(1, 2) or j > s.N + Fraction(1, 2) or deg != expected_degeneracy(j, s.N):
            raise DegenerateSpectrumError(
                f"spin {j} has degeneracy {deg}, expected {expected_degeneracy(j, s.N)}", w
            )
        groups.append(SpectrumGroup(j, measured, lambda_sq_formula(j, s.N), deg))
    report = SpectrumReport(N=s.N, ell=s.ell, groups=tuple(groups))
    if report.total_degeneracy != hilbert_dim(s):
        raise DegenerateSpectrumError("multiplets do not exhaust the Hilbert space", w)
    return report


def chirality_index(g) -> float:
    """``Tr_H(g)`` for a chirality operator ``g``."""
    return float(np.real(np.trace(as_matrix(g))))


def zeromode_projector(s: FuzzySphere) -> np.ndarray:
    """Orthogonal projector onto the ``j = N + 1/2`` multiplet (the zeromodes of ``D``)."""
    jmax = s.N + 0.5
    w, v = hermitian_eigensystem(total_angular_momentum_squared(s))
    mask = np.abs(w - jmax * (jmax + 1)) < 1e-8 * jmax * (jmax + 1)
    if mask.sum() != 2 * s.N + 2:
        raise InternalConsistencyError(
            f"J^2 multiplet j={jmax} has dimension {mask.sum()}, expected {2 * s.N + 2}"
        )
    basis = v[:, mask]
    return basis @ basis.conj().T


def boundedness_probe(s: FuzzySphere, D: np.ndarray | None = None) -> float:
    """Spectral norm of ``[D, x_3] / ell`` on H_N."""
    if D is None:
        D = dirac_operator(s)
    x3 = spinor(lift_left(s.x[2]))
    c = D @ x3 - x3 @ D
    # [D, x3] is anti-Hermitian, so its norm is the largest |eigenvalue| of i[D, x3]
    return float(np.max(np.abs(hermitian_eigenvalues(1j * c)))) / s.ell
