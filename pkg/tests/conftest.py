import numpy as np
import pytest

from weighted_pick import InterpolationData, hardy, make_weight_bergman


def random_stable(rng, d, rho=0.8):
    """Random non-normal complex matrix with spectral radius ``rho``."""
    T = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return T * (rho / max(np.abs(np.linalg.eigvals(T))))


def random_matrix(rng, m, n):
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


def single_node(n, target=4 / 3):
    """One node at 3/4 with value ``target``, Hardy into ``A^2_n``."""
    return InterpolationData(hardy(), make_weight_bergman(n), [[0.75]], [[1.0]], [[target]])


def power_factor_closed_form(n, z):
    """Central solution of :func:`single_node` with ``mu = 1`` by hand."""
    a, b = 16 ** (n - 1), 7 ** (n - 1)
    return 7 ** n * (1 - z) / ((1 - 0.75 * z) ** (n - 1) * (3 * a + 4 * b - (9 / 4 * a + 16 / 3 * b) * z))


def single_factor_closed_form(n, z):
    """The same formula with a single factor ``(1 - 3z/4)``."""
    a, b = 16 ** (n - 1), 7 ** (n - 1)
    return 7 ** n * (1 - z) / ((1 - 0.75 * z) * (3 * a + 4 * b - (9 / 4 * a + 16 / 3 * b) * z))


def disk_points(rng, k, rmax=0.9):
    return rmax * np.sqrt(rng.uniform(size=k)) * np.exp(2j * np.pi * rng.uniform(size=k))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
