import sys
import functools

import numpy as np
import pytest

from fuzzysphere import dirac_operator, fuzzy_sphere


@functools.lru_cache(maxsize=None)
def sphere_and_dirac(N, ell=1.0):
    s = fuzzy_sphere(N, ell)
    return s, dirac_operator(s)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_matrix(rng, n, m=None):
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def random_hermitian(rng, n):
    g = random_matrix(rng, n)
    return (g + g.conj().T) / 2


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
