import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weighted_pick import (DomainError, InvalidArgumentError, hardy, kernel_eval, kernel_matrix,
                           kernel_tilde_eval, kernel_tilde_matrix, make_weight_bergman, make_weight_explicit,
                           psi_apply, weight_from_spec)

disk = st.builds(lambda r, t: r * complex(math.cos(t), math.sin(t)),
                 st.floats(0, 0.9), st.floats(0, 2 * math.pi))


def brute_kernel(w, x, terms=4000):
    return sum(x ** j / w.beta(j) for j in range(terms))


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_bergman_weights_match_factorials(n):
    w = make_weight_bergman(n)
    for j in range(12):
        expected = Fraction(math.factorial(j) * math.factorial(n - 1), math.factorial(j + n - 1))
        assert w.beta_exact(j) == expected


def test_hardy_weight_is_constant():
    w = hardy()
    assert w.is_hardy
    assert all(w.beta(j) == 1 for j in range(100))
    assert w.delta(0) == 1 and all(w.delta(j) == 0 for j in range(1, 100))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_delta_telescopes(n):
    w = make_weight_bergman(n)
    for j in range(1, 40):
        assert w.delta_exact(j) == w.inv_beta_exact(j) - w.inv_beta_exact(j - 1)
    # partial sums of delta recover 1/beta
    assert sum(w.delta_exact(j) for j in range(30)) == w.inv_beta_exact(29)


def test_delta_beyond_exact_range_is_consistent():
    w = make_weight_bergman(3)
    for j in (70, 100, 500):
        assert w.delta(j) == pytest.approx(w.inv_beta(j) - w.inv_beta(j - 1), rel=1e-15)


def test_explicit_constant_last():
    w = make_weight_explicit([1, 0.5, 0.25])
    assert [w.beta(j) for j in range(5)] == [1, 0.5, 0.25, 0.25, 0.25]
    assert [w.delta(j) for j in range(5)] == [1, 1, 2, 0, 0]
    assert not w.is_hardy


def test_explicit_bergman_tail_continues_smoothly():
    w = make_weight_explicit([1, 0.5], {"bergman": 2})
    # A^2_2 has beta_j = 1/(j+1); scaled to meet 0.5 at j = 1
    assert [w.beta(j) for j in range(5)] == pytest.approx([1, 0.5, 1 / 3, 0.25, 0.2])
    assert make_weight_explicit([1, 0.5], ("bergman", 2)) == w


@pytest.mark.parametrize("head, tail", [
    ([], "constant-last"),
    ([2, 1], "constant-last"),
    ([1, 0.5, 0.7], "constant-last"),
    ([1, -0.5], "constant-last"),
    ([1, float("nan")], "constant-last"),
    ([1, 0.5], "geometric"),
    ([1, 0.5], {"bergman": 0}),
])
def test_explicit_rejects_bad_weights(head, tail):
    with pytest.raises(InvalidArgumentError):
        make_weight_explicit(head, tail)


@pytest.mark.parametrize("n", [0, -1, 1.5, True, "2"])
def test_bergman_rejects_bad_index(n):
    with pytest.raises(InvalidArgumentError):
        make_weight_bergman(n)


def test_weight_spec_grammar_round_trips():
    specs = [{"family": "bergman", "n": 2},
             {"family": "explicit", "head": [1, 0.5, 0.25], "tail": "constant-last"},
             {"family": "explicit", "head": [1, 0.5], "tail": {"bergman": 3}}]
    for spec in specs:
        w = weight_from_spec(spec)
        assert weight_from_spec(w.to_spec()) == w
    assert weight_from_spec(3) == make_weight_bergman(3)
    for bad in [{"family": "bergman"}, {"family": "nope"}, "bergman", {"family": "explicit"}]:
        with pytest.raises(InvalidArgumentError):
            weight_from_spec(bad)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bergman_kernel_closed_form(n):
    w = make_weight_bergman(n)
    z, zeta = 0.4 + 0.3j, -0.2 + 0.5j
    x = z * np.conj(zeta)
    assert kernel_eval(w, z, zeta) == pytest.approx(brute_kernel(w, x), rel=1e-13)
    assert kernel_tilde_eval(w, z, zeta) == pytest.approx((1 - x) * brute_kernel(w, x), rel=1e-13)


@pytest.mark.parametrize("w", [make_weight_explicit([1, 0.5, 0.25]),
                               make_weight_explicit([1, 0.8, 0.5], {"bergman": 2})])
def test_explicit_kernel_matches_brute_series(w):
    for z, zeta in [(0.3, 0.2), (0.9j, 0.95), (-0.7 + 0.1j, 0.5 - 0.6j)]:
        x = z * np.conj(zeta)
        assert kernel_eval(w, z, zeta) == pytest.approx(brute_kernel(w, x, 20000), rel=1e-12)


def test_kernel_matrix_is_hermitian_psd(rng):
    zs = 0.9 * np.sqrt(rng.uniform(size=12)) * np.exp(2j * np.pi * rng.uniform(size=12))
    for w in (make_weight_bergman(2), make_weight_explicit([1, 0.5, 0.25])):
        K = kernel_matrix(w, zs)
        assert np.allclose(K, K.conj().T, atol=1e-13)
        assert np.linalg.eigvalsh(K)[0] > -1e-10
        assert np.allclose(kernel_tilde_matrix(w, zs), (1 - np.outer(zs, zs.conj())) * K)


def test_kernel_rejects_points_outside_disk():
    w = make_weight_bergman(2)
    with pytest.raises(DomainError):
        kernel_eval(w, 1.0, 0.1)
    with pytest.raises(DomainError):
        kernel_matrix(w, [0.1, 1.2j])


@settings(max_examples=50, deadline=None)
@given(disk, disk, st.integers(1, 5))
def test_factor_identity(z, zeta, n):
    """Psi(z) Psi(zeta)* equals the factored kernel."""
    w = make_weight_bergman(n)
    J = 200
    y = np.sqrt(w.delta_array(J)) * np.conj(zeta) ** np.arange(J + 1)
    lhs = psi_apply(w, y, z)
    assert abs(lhs - kernel_tilde_eval(w, z, zeta)) <= 1e-10


@settings(max_examples=50, deadline=None)
@given(disk, disk)
def test_kernel_hermitian_symmetry(z, zeta):
    w = make_weight_explicit([1, 0.6, 0.3], {"bergman": 2})
    assert kernel_eval(w, z, zeta) == pytest.approx(np.conj(kernel_eval(w, zeta, z)), rel=1e-12)


def test_psi_apply_on_vectors():
    w = make_weight_bergman(3)
    y = np.array([[1.0, 0.0], [0.0, 2.0], [1.0, 1.0]])
    z = 0.5
    expected = y[0] + math.sqrt(w.delta(1)) * z * y[1] + math.sqrt(w.delta(2)) * z ** 2 * y[2]
    assert np.allclose(psi_apply(w, y, z), expected)
    with pytest.raises(InvalidArgumentError):
        psi_apply(w, 1.0, 0.1)
