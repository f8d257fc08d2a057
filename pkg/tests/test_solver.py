import numpy as np
import pytest

from conftest import power_factor_closed_form, disk_points, single_factor_closed_form, single_node
from weighted_pick import (InvalidArgumentError, SchurParameter, SolverPreconditionError, UnsupportedProblemError,
                           central_solution, check_contractive, check_interpolation, choose_mu, constant,
                           make_weight_bergman, np_data, random_schur_parameter, solve_parametrized, theta_blocks,
                           theta_eval, theta_identity_residual, theta_realization)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_central_solution_interpolates(n):
    S = central_solution(single_node(n), mu=1)
    assert S(0.75)[0, 0] == pytest.approx(4 / 3, abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_central_solution_matches_hand_computation(rng, n):
    S = central_solution(single_node(n), mu=1)
    for z in disk_points(rng, 20):
        assert S(z)[0, 0] == pytest.approx(power_factor_closed_form(n, z), rel=1e-10)


def test_single_factor_formula_agrees_only_for_n2(rng):
    # (1 - 3z/4) appears to the power n - 1, which is 1 only when n = 2
    z = disk_points(rng, 5)
    assert np.allclose(single_factor_closed_form(2, z), power_factor_closed_form(2, z))
    assert not np.allclose(single_factor_closed_form(3, z), power_factor_closed_form(3, z))
    assert single_factor_closed_form(3, 0.75) != pytest.approx(4 / 3)


def test_central_value_at_zero():
    assert central_solution(single_node(2), mu=1)(0)[0, 0] == pytest.approx(49 / 76, rel=1e-13)


def test_central_solution_depends_on_mu():
    a = central_solution(single_node(2), mu=1)(0.2)[0, 0]
    b = central_solution(single_node(2), mu=-1)(0.2)[0, 0]
    assert abs(a - b) > 1e-3
    for mu in (1, -1, 1j):
        assert central_solution(single_node(2), mu=mu)(0.75)[0, 0] == pytest.approx(4 / 3, abs=1e-12)


def test_choose_mu_stays_off_spectrum():
    T = np.diag([0.9, 0.9j, -0.9])
    mu = choose_mu(T)
    assert abs(abs(mu) - 1) < 1e-12
    assert np.min(np.abs(mu - np.conj(np.diag(T)))) > 0.5


def test_zero_target_gives_zero_solution(rng):
    S = central_solution(single_node(2, target=0.0))
    assert np.allclose(S.eval_many(disk_points(rng, 10)), 0)


def test_theta_identity_converges_with_truncation(rng):
    data = single_node(2)
    pts = disk_points(rng, 5, 0.9)
    res16 = max(theta_identity_residual(theta_realization(data, mu=1, truncation=16), z, w)
                for z, w in zip(pts, pts[::-1]))
    res64 = max(theta_identity_residual(theta_realization(data, mu=1, truncation=64), z, w)
                for z, w in zip(pts, pts[::-1]))
    assert res64 < 1e-6 and res64 < res16


def test_theta_blocks_partition():
    th = theta_realization(single_node(3), mu=1, truncation=8)
    A, B, C, D = theta_blocks(th, 0.2)
    M = theta_eval(th, 0.2)
    assert M.shape == (10, 10) and A.shape == (9, 9) and D.shape == (1, 1)
    assert np.array_equal(np.block([[A, B], [C, D]]), M)
    assert np.allclose(theta_eval(th, th.mu), np.eye(10))


def test_parametrized_family_on_np_problem(rng):
    data = np_data([0.5, -0.3j, 0.2 + 0.6j], [[[0.3, 0.1]], [[0.2j, -0.4]], [[0.1, 0.1]]])
    for _ in range(5):
        param = random_schur_parameter(1, 2, 3, rng)
        S = solve_parametrized(data, param)
        assert check_interpolation(data, S).residual < 1e-8
        for z, V in zip([0.5, -0.3j, 0.2 + 0.6j], [[0.3, 0.1], [0.2j, -0.4], [0.1, 0.1]]):
            assert np.allclose(S(z)[0], V, atol=1e-10)
        assert check_contractive(S, data.alpha, data.beta).min_eigenvalue > -1e-7


def test_schur_parameter_validation():
    with pytest.raises(InvalidArgumentError):
        SchurParameter.constants([[[0.8]], [[0.8]]])
    with pytest.raises(InvalidArgumentError):
        SchurParameter((constant([[0.1]]), constant([[0.1, 0.1]])))
    with pytest.raises(InvalidArgumentError):
        SchurParameter(())
    p = SchurParameter.constants([[[0.6]], [[0.8]]])
    assert p.support_bound == 1 and p.contractivity_margin([0.0]) == pytest.approx(0, abs=1e-12)
    assert SchurParameter.zero(2, 1).is_zero() and not p.is_zero()
    with pytest.raises(InvalidArgumentError):
        solve_parametrized(single_node(2), SchurParameter.zero(2, 1))


def test_random_schur_parameter_is_admissible(rng):
    for J in range(4):
        p = random_schur_parameter(2, 3, J, rng)
        assert p.shape == (2, 3) and p.support_bound == J
        assert p.contractivity_margin(disk_points(rng, 20, 0.99)) >= -1e-12


def test_solver_preconditions():
    with pytest.raises(SolverPreconditionError):
        central_solution(single_node(1))
    a = 1 / np.sqrt(2)
    v = np.sqrt(26 / 15)
    with pytest.raises(UnsupportedProblemError):
        central_solution(np_data([a, -a], [v, -v], alpha=make_weight_bergman(2), beta=make_weight_bergman(3)))
    # 1 - |V|^2 k_alpha / k_beta = 0 at a single node: singular Pick matrix
    z = 0.5
    boundary = np.sqrt((1 - z * z) ** -2 / (1 - z * z) ** -1)
    with pytest.raises(SolverPreconditionError):
        central_solution(np_data([z], [boundary]))
    with pytest.raises(InvalidArgumentError):
        central_solution(single_node(2), mu=0.5)
    with pytest.raises(InvalidArgumentError):
        central_solution(np_data([0.9], [0.1]), mu=0.9)
