import numpy as np
import pytest

from fuzzysphere import (
    ScalarField,
    adjoint_eigenbasis,
    fuzzy_sphere,
    integrate,
    laplacian_spectrum,
    mode_decompose,
    scalar_action,
)
from fuzzysphere.exceptions import DegenerateSpectrumError
from fuzzysphere.scalar import action_closed, action_spectral, mode_sum, random_field

from conftest import sphere_and_dirac


def test_constant_field_has_zero_action():
    s, D = sphere_and_dirac(3)
    rep = scalar_action(s, np.eye(4), D)
    assert abs(rep.s_spectral) <= 1e-13 and abs(rep.s_closed) <= 1e-13
    assert rep.mode_sum <= 1e-13


@pytest.mark.parametrize("N", [1, 2, 5, 9])
def test_x3_reference_action(N):
    # [x_i, x3] x-terms give alpha^2 (x1^2 + x2^2) and Tr x_i^2 = ell^2 (N+1)/3, so S = 4 ell^2 / 9
    for ell in (1.0, 1.7):
        s = fuzzy_sphere(N, ell)
        _, D = sphere_and_dirac(N, ell)
        rep = scalar_action(s, s.x[2], D)
        assert abs(rep.s_closed - 4 * ell**2 / 9) <= 1e-12 * ell**2
        assert abs(rep.s_spectral - 4 * ell**2 / 9) <= 1e-12 * ell**2


@pytest.mark.parametrize("N", [1, 4, 8])
def test_dual_route_random_fields(N):
    s, D = sphere_and_dirac(N)
    rng = np.random.default_rng(N)
    for _ in range(10):
        rep = scalar_action(s, random_field(N, rng), D)
        assert rep.discrepancy <= 1e-12 * max(1.0, abs(rep.s_closed))
        assert abs(rep.mode_sum - rep.s_closed) <= 1e-10 * max(1.0, abs(rep.s_closed))
        assert rep.s_closed >= -1e-12


def test_spectral_route_against_explicit_trace(rng):
    s, D = sphere_and_dirac(2)
    phi = random_field(2, rng).phi
    from fuzzysphere.triple import lift_left, spinor

    p = spinor(lift_left(phi))
    dphi = D @ p - p @ D
    explicit = np.trace(dphi.conj().T @ dphi) / (2 * 9)
    assert abs(explicit.imag) <= 1e-12
    assert action_spectral(s, phi, D) == pytest.approx(explicit.real, rel=1e-13)


def test_action_vanishes_only_on_constants(rng):
    s = fuzzy_sphere(3)
    assert action_closed(s, (2 - 1j) * np.eye(4)) <= 1e-12
    for _ in range(5):
        phi = random_field(3, rng).phi
        phi -= np.trace(phi) / 4 * np.eye(4)
        assert action_closed(s, phi) > 1e-10


def test_mode_actions_scale_with_casimir():
    s = fuzzy_sphere(4)
    basis = adjoint_eigenbasis(s)
    ratios = {}
    for l, m, Y in basis:
        S = action_closed(s, Y)
        if l == 0:
            assert abs(S) <= 1e-12
            continue
        ratios[(l, m)] = S / (l * (l + 1))
    values = np.array(list(ratios.values()))
    assert np.abs(values - values[0]).max() <= 1e-10
    # the constant is 2/3 for harmonics of unit norm Tr(Y^+ Y)/(N+1) = 1
    assert values[0] == pytest.approx(2 / 3, abs=1e-10)
    assert action_closed(s, basis.matrices[basis.index(2, 1)]) / action_closed(
        s, basis.matrices[basis.index(1, -1)]
    ) == pytest.approx(3.0, abs=1e-10)


def test_mode_decomposition_parseval(rng):
    s = fuzzy_sphere(3)
    phi = random_field(3, rng).phi
    modes = mode_decompose(s, phi)
    assert len(modes) == 16
    assert abs(sum(abs(c) ** 2 for _, _, c in modes) - np.trace(phi.conj().T @ phi).real / 4) <= 1e-10


def test_identity_has_only_monopole():
    modes = mode_decompose(fuzzy_sphere(2), np.eye(3))
    assert abs(modes[0][2]) > 0.5
    assert all(abs(c) <= 1e-12 for _, _, c in modes[1:])
    assert mode_sum(modes) <= 1e-20


def test_laplacian_n2():
    assert [(round(v, 9), k) for v, k in laplacian_spectrum(fuzzy_sphere(2))] == [(0, 1), (2, 3), (6, 5)]


@pytest.mark.parametrize("N", range(1, 17))
def test_laplacian_truncation(N):
    spec = laplacian_spectrum(fuzzy_sphere(N))
    assert sum(k for _, k in spec) == (N + 1) ** 2
    assert spec[-1][1] == 2 * N + 1 and abs(spec[-1][0] - N * (N + 1)) <= 1e-9
    for l, (v, k) in enumerate(spec):
        assert abs(v - l * (l + 1)) <= 1e-9 and k == 2 * l + 1


def test_laplacian_failure_signal(monkeypatch):
    from fuzzysphere import scalar

    monkeypatch.setattr(scalar, "hermitian_eigenvalues", lambda h: np.array([0.0, 1.0, 2.0, 2.0]))
    with pytest.raises(DegenerateSpectrumError):
        scalar.laplacian_spectrum(fuzzy_sphere(1))


def test_integration():
    for N in (1, 4, 7):
        s = fuzzy_sphere(N)
        assert integrate(s, np.eye(N + 1)) == pytest.approx(1.0)
        assert abs(integrate(s, s.x[2])) <= 1e-14
        assert integrate(s, s.x[2] @ s.x[2]).real == pytest.approx(1 / 3, abs=1e-14)


def test_integration_is_positive_and_linear(rng):
    s = fuzzy_sphere(3)
    a, b = random_field(3, rng).phi, random_field(3, rng).phi
    assert integrate(s, 2 * a - 1j * b) == pytest.approx(2 * integrate(s, a) - 1j * integrate(s, b))
    assert integrate(s, a.conj().T @ a).real > 0


def test_field_shape_checks():
    s = fuzzy_sphere(2)
    with pytest.raises(ValueError):
        ScalarField(2, np.eye(4))
    with pytest.raises(ValueError):
        scalar_action(s, ScalarField(3, np.eye(4)))
