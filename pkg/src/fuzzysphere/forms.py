"""Connes' differential calculus over the fuzzy sphere triple.

A universal p-form is a weighted sum of words ``a0 da1 ... dap``; it is
represented on H_N as ``sum w * a0 [D, a1] ... [D, ap]`` with the algebra
acting by left multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import FuzzySphere
from .exceptions import UnstableRankError
from .linalg import numerical_rank
from .triple import dirac_operator, lift_left, spinor

RANK_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class UniversalForm:
    """Weighted words ``(a0, a1, ..., ap)`` of algebra elements."""

    degree: int
    terms: tuple = ()

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        shapes = set()
        for weight, factors in self.terms:
            if len(factors) != self.degree + 1:
                raise ValueError(
                    f"degree-{self.degree} term needs {self.degree + 1} factors, got {len(factors)}"
                )
            shapes.update(np.shape(a) for a in factors)
        if len(shapes) > 1:
            raise ValueError(f"factors have mixed shapes {sorted(shapes)}")

    @classmethod
    def word(cls, *factors, weight: complex = 1.0) -> "UniversalForm":
        factors = tuple(np.asarray(a, dtype=complex) for a in factors)
        return cls(degree=len(factors) - 1, terms=((complex(weight), factors),))

    def __add__(self, other: "UniversalForm") -> "UniversalForm":
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        return UniversalForm(self.degree, self.terms + other.terms)


@dataclass(frozen=True, eq=False)
class RepresentedForm:
    degree: int
    matrix: np.ndarray


def _pi(s: FuzzySphere, a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.shape != (s.dim, s.dim):
        raise ValueError(f"algebra element must be {s.dim}x{s.dim}, got {a.shape}")
    return spinor(lift_left(a))


def exterior_derivative(s: FuzzySphere, a, D: np.ndarray | None = None) -> RepresentedForm:
    """``pi(da) = [D, pi(a)]``."""
    if D is None:
        D = dirac_operator(s)
    pa = _pi(s, a)
    return RepresentedForm(1, D @ pa - pa @ D)


def derive(w: UniversalForm) -> UniversalForm:
    """Universal derivative: ``a0 da1 ... dap -> da0 da1 ... dap``."""
    terms = []
    for weight, factors in w.terms:
        one = np.eye(factors[0].shape[0], dtype=complex)
        terms.append((weight, (one,) + tuple(factors)))
    return UniversalForm(w.degree + 1, tuple(terms))


def represent(s: FuzzySphere, w: UniversalForm, D: np.ndarray | None = None) -> RepresentedForm:
    """Image of a universal form on H_N. An empty form maps to zero."""
    if D is None:
        D = dirac_operator(s)
    out = np.zeros(D.shape, dtype=complex)
    for weight, factors in w.terms:
        term = _pi(s, factors[0])
        for a in factors[1:]:
            term = term @ exterior_derivative(s, a, D).matrix
        out += weight * term
    return RepresentedForm(w.degree, out)


def represent_derivative(s: FuzzySphere, w: UniversalForm, D: np.ndarray | None = None) -> RepresentedForm:
    """``sum w * [D, a0] [D, a1] ... [D, ap]`` computed directly, without :func:`derive`."""
    if D is None:
        D = dirac_operator(s)
    out = np.zeros(D.shape, dtype=complex)
    for weight, factors in w.terms:
        term = np.eye(D.shape[0], dtype=complex)
        for a in factors:
            term = term @ exterior_derivative(s, a, D).matrix
        out += weight * term
    return RepresentedForm(w.degree + 1, out)


class JunkRanks(NamedTuple):
    dim_pi: int
    dim_junk: int
    dim_omega: int


def _random_element(rng: np.random.Generator, basis: np.ndarray) -> np.ndarray:
    c = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
    a = np.tensordot(c, basis, axes=1)
    return a / np.linalg.norm(a)


def _word_images(s, D, dA, words):
    """Columns ``pi(a0 da1 .. dap)`` and ``pi(da0 da1 .. dap)`` for each word."""
    pis, dpis = [], []
    for word in words:
        head = _pi(s, word[0])
        tail = np.eye(D.shape[0], dtype=complex)
        for a in word[1:]:
            tail = tail @ dA(a)
        pis.append((head @ tail).ravel())
        dpis.append((dA(word[0]) @ tail).ravel())
    return np.array(pis).T, np.array(dpis).T


def _sampled_ranks(s: FuzzySphere, D: np.ndarray, p: int, samples: int, seed: int) -> JunkRanks:
    rng = np.random.default_rng(seed)
    n = s.dim
    basis = np.eye(n * n, dtype=complex).reshape(n * n, n, n)

    def dA(a):
        pa = _pi(s, a)
        return D @ pa - pa @ D

    words = [[_random_element(rng, basis) for _ in range(p + 1)] for _ in range(samples)]
    pi_p, _ = _word_images(s, D, dA, words)
    pi_p /= np.linalg.norm(pi_p, axis=0)
    dim_pi = numerical_rank(pi_p, RANK_RTOL)
    if p == 0:
        return JunkRanks(dim_pi, 0, dim_pi)

    lower = [[_random_element(rng, basis) for _ in range(p)] for _ in range(samples)]
    pi_low, dpi_low = _word_images(s, D, dA, lower)
    # same rescaling on both images keeps the kernel of pi_low aligned with dpi_low
    norms = np.linalg.norm(np.vstack([pi_low, dpi_low]), axis=0)
    pi_low /= norms
    dpi_low /= norms
    # rank(pi, dpi) = rank(pi) + dim dpi(ker pi)
    dim_junk = numerical_rank(np.vstack([pi_low, dpi_low]), RANK_RTOL) - numerical_rank(
        pi_low, RANK_RTOL
    )
    return JunkRanks(dim_pi, dim_junk, dim_pi - dim_junk)


def junk_quotient_rank(
    s: FuzzySphere,
    p: int,
    samples: int | None = None,
    seed: int = 0,
    n_seeds: int = 3,
) -> JunkRanks:
    """Dimensions of ``pi(Omega^p)``, of the junk ``pi(d ker pi)`` and of their quotient.

    Spans are built from ``samples`` random universal forms whose factors are
    Gaussian combinations of the matrix-unit basis of A_N. The computation is
    repeated for seeds ``seed, seed + 1, ...`` and must agree across all
    ``n_seeds`` of them; otherwise :class:`UnstableRankError` is raised.
    """
    if not 0 <= p <= 2:
        raise ValueError(f"degree must be 0, 1 or 2, got {p}")
    if s.N > 3:
        raise ValueError(f"junk probe is limited to N <= 3, got N={s.N}")
    required = s.dim ** (2 * (p + 1))
    if samples is None:
        samples = required + 8
    if samples < required:
        raise ValueError(f"need at least {required} samples for degree {p}, got {samples}")
    D = dirac_operator(s)
    per_seed = {sd: _sampled_ranks(s, D, p, samples, sd) for sd in range(seed, seed + n_seeds)}
    distinct = set(per_seed.values())
    if len(distinct) != 1:
        raise UnstableRankError(f"junk ranks differ between seeds: {per_seed}", per_seed)
    return distinct.pop()
