import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import single_node
from weighted_pick import (InvalidArgumentError, PsdClass, hardy, is_psd, make_weight_bergman, np_data,
                           np_pick_closed_form, pick_matrix, solvability)


def test_is_psd_classes():
    assert is_psd(np.diag([1.0, 2.0])).classification is PsdClass.POSITIVE_DEFINITE
    assert is_psd(np.ones((2, 2))).classification is PsdClass.POSITIVE_SEMIDEFINITE
    v = is_psd(np.diag([1.0, -1e-3]))
    assert v.classification is PsdClass.INDEFINITE and not v.is_psd
    assert np.allclose(abs(v.witness), [0, 1])


def test_is_psd_tolerance_is_relative():
    M = np.diag([1e6, -1e-4])
    v = is_psd(M, 1e-9)
    assert v.tolerance_used == pytest.approx(1e-3)
    assert v.min_eigenvalue == pytest.approx(-1e-4)
    assert v.classification is PsdClass.POSITIVE_SEMIDEFINITE
    assert is_psd(M, 1e-11).classification is PsdClass.INDEFINITE
    # small matrices use an absolute floor of tol
    assert is_psd(np.diag([0.5, -2e-9]), 1e-9).classification is PsdClass.INDEFINITE


def test_is_psd_rejects_non_hermitian():
    with pytest.raises(InvalidArgumentError):
        is_psd([[1, 1], [0, 1]])
    with pytest.raises(InvalidArgumentError):
        is_psd(np.ones((2, 3)))


@pytest.mark.parametrize("n", range(1, 7))
def test_single_node_pick_value(n):
    # G_beta = (1 - 9/16)^-n, G_alpha = (16/9) / (1 - 9/16)
    P = pick_matrix(single_node(n))
    assert P[0, 0].real == pytest.approx((16 / 7) ** n - 256 / 63, rel=1e-12)


def test_single_node_verdicts():
    assert solvability(single_node(1)).solvable is False
    rep = solvability(single_node(2))
    assert rep.conclusive and rep.solvable and rep.verdict.is_definite
    assert rep.pick[0, 0].real == pytest.approx(512 / 441, rel=1e-12)


def test_non_hardy_input_is_necessary_only():
    a = 1 / np.sqrt(2)
    v = np.sqrt(26 / 15)
    data = np_data([a, -a], [v, -v], alpha=make_weight_bergman(2), beta=make_weight_bergman(3))
    P = pick_matrix(data)
    assert np.allclose(P, 16 / 15 * np.ones((2, 2)), atol=1e-12)
    rep = solvability(data)
    assert not rep.conclusive and rep.solvable is None
    assert rep.verdict.classification is PsdClass.POSITIVE_SEMIDEFINITE
    # scaled-up values break the necessary condition, which is conclusive
    rep = solvability(np_data([a, -a], [2 * v, -2 * v], alpha=2, beta=3))
    assert rep.conclusive and rep.solvable is False


nodes = st.lists(st.complex_numbers(max_magnitude=0.9), min_size=1, max_size=4,
                 unique_by=lambda z: (round(z.real, 3), round(z.imag, 3)))


@settings(max_examples=40, deadline=None)
@given(nodes, st.integers(0, 2 ** 32 - 1), st.integers(1, 3), st.integers(1, 3))
def test_pick_matrix_matches_kernel_closed_form(zs, seed, p, n):
    rng = np.random.default_rng(seed)
    V = [rng.standard_normal((p, 2)) + 1j * rng.standard_normal((p, 2)) for _ in zs]
    beta = make_weight_bergman(n)
    P = pick_matrix(np_data(zs, V, beta=beta))
    Q = np_pick_closed_form(zs, V, beta=beta)
    assert np.allclose(P, Q, rtol=0, atol=1e-9 * max(1, np.abs(Q).max()))


def test_np_data_layout():
    data = np_data([0.5, -0.3j], [[[1, 2]], [[3, 4]]])
    assert data.T.shape == (2, 2) and data.E.shape == (1, 2) and data.N.shape == (2, 2)
    assert data.alpha == hardy() and data.beta == make_weight_bergman(2)
    assert np.allclose(np.diag(data.T), [0.5, 0.3j])


@pytest.mark.parametrize("nodes, values", [
    ([], []),
    ([1.0], [0.1]),
    ([0.1, 0.1], [0.1, 0.2]),
    ([0.1, 0.2], [0.1]),
    ([0.1, 0.2], [[[1]], [[1, 2]]]),
])
def test_np_data_rejects_bad_input(nodes, values):
    with pytest.raises(InvalidArgumentError):
        np_data(nodes, values)
