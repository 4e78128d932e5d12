"""Free complex scalar field on the fuzzy sphere."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AdjointEigenbasis, FuzzySphere, adjoint_eigenbasis, adjoint_generators
from .exceptions import DegenerateSpectrumError
from .linalg import cluster_sorted, hermitian_eigenvalues
from .triple import dirac_operator, lift_left, spinor

#: Largest tolerated imaginary residue of an action, relative to ``max(1, |S|)``.
IMAG_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ScalarField:
    N: int
    phi: np.ndarray

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=complex)
        if phi.shape != (self.N + 1, self.N + 1):
            raise ValueError(f"field for N={self.N} must be {self.N + 1}x{self.N + 1}, got {phi.shape}")
        object.__setattr__(self, "phi", phi)


@dataclass(frozen=True)
class ActionReport:
    s_spectral: float
    s_closed: float
    mode_sum: float

    @property
    def discrepancy(self) -> float:
        return abs(self.s_spectral - self.s_closed)


def as_field(s: FuzzySphere, f) -> ScalarField:
    if isinstance(f, ScalarField):
        if f.N != s.N:
            raise ValueError(f"field has N={f.N}, sphere has N={s.N}")
        return f
    return ScalarField(s.N, f)


def random_field(N: int, rng: np.random.Generator) -> ScalarField:
    """``A + iB`` with independent Gaussian Hermitian ``A`` and ``B``."""

    def hermitian():
        g = rng.standard_normal((N + 1, N + 1)) + 1j * rng.standard_normal((N + 1, N + 1))
        return (g + g.conj().T) / 2

    return ScalarField(N, hermitian() + 1j * hermitian())


def _real(value: complex, label: str) -> float:
    if abs(value.imag) > IMAG_TOL * max(1.0, abs(value.real)):
        raise ArithmeticError(f"{label} has imaginary part {value.imag:.3e}")
    return float(value.real)


def action_spectral(s: FuzzySphere, f, D: np.ndarray | None = None) -> float:
    """``Tr_H((dphi)^+ dphi) / (2 (N+1)^2)`` with ``dphi = [D, phi]`` on H_N."""
    f = as_field(s, f)
    if D is None:
        D = dirac_operator(s)
    p = spinor(lift_left(f.phi))
    dphi = D @ p - p @ D
    # Tr(A^+ A) = sum |A_ij|^2
    return float(np.vdot(dphi, dphi).real) / (2 * s.dim**2)


def action_closed(s: FuzzySphere, f) -> float:
    """``-2/(3 alpha^2 (N+1)) Tr([x_i, phi^+][x_i, phi])``."""
    phi = as_field(s, f).phi
    phid = phi.conj().T
    total = sum(np.trace((x @ phid - phid @ x) @ (x @ phi - phi @ x)) for x in s.x)
    return _real(-2 / (3 * s.alpha**2 * s.dim) * total, "closed-form action")


def mode_decompose(s: FuzzySphere, f, basis: AdjointEigenbasis | None = None) -> list[tuple[int, int, complex]]:
    """Coefficients ``(l, m, c_lm)`` of the field in the fuzzy harmonic basis."""
    phi = as_field(s, f).phi
    if basis is None:
        basis = adjoint_eigenbasis(s)
    c = basis.coefficients(phi)
    return [(l, m, complex(cl)) for (l, m), cl in zip(basis.labels, c)]


def mode_sum(modes) -> float:
    """``(2/3) sum l(l+1) |c_lm|^2``: the action rebuilt from harmonic coefficients."""
    return float(2 / 3 * sum(l * (l + 1) * abs(c) ** 2 for l, _, c in modes))


def scalar_action(
    s: FuzzySphere,
    f,
    D: np.ndarray | None = None,
    basis: AdjointEigenbasis | None = None,
) -> ActionReport:
    f = as_field(s, f)
    return ActionReport(
        s_spectral=action_spectral(s, f, D),
        s_closed=action_closed(s, f),
        mode_sum=mode_sum(mode_decompose(s, f, basis)),
    )


def laplacian_spectrum(s: FuzzySphere) -> list[tuple[float, int]]:
    """Eigenvalues of the adjoint Casimir on A_N with multiplicities.

    Raises :class:`DegenerateSpectrumError` unless the result is exactly
    ``l(l+1)`` with multiplicity ``2l+1`` for ``l = 0..N``.
    """
    ad = adjoint_generators(s)
    w = hermitian_eigenvalues(sum(a @ a for a in ad))
    clusters = cluster_sorted(w, 1e-8 * max(1.0, abs(w).max()))
    out = [(float(w[idx].mean()), len(idx)) for idx in clusters]
    expected = [(l * (l + 1), 2 * l + 1) for l in range(s.N + 1)]
    if len(out) != len(expected) or any(
        abs(v - ev) > 1e-9 or k != ek for (v, k), (ev, ek) in zip(out, expected)
    ):
        raise DegenerateSpectrumError(f"Laplacian spectrum {out} is not truncated l(l+1)", w)
    return out


def integrate(s: FuzzySphere, f) -> complex:
    """Normalized fuzzy integral ``Tr(phi)/(N+1)``; the integral of the identity is 1."""
    phi = as_field(s, f).phi
    return complex(np.trace(phi) / s.dim)


integration_correspondence = integrate
