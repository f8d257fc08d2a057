import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from conftest import single_node
from weighted_pick import (InvalidArgumentError, SchurParameter, SolverPreconditionError, TangentialInterpolator,
                           make_weight_bergman)


def test_params_round_trip():
    est = TangentialInterpolator(beta=3, mu=1j, tol=1e-8)
    assert est.get_params()["beta"] == 3
    est2 = clone(est).set_params(truncation=32)
    assert est2.truncation == 32 and est2.mu == 1j


def test_fit_predict_scalar_nodes():
    X = [0.5, -0.3j, 0.1 + 0.2j]
    y = [0.3, 0.1j, 0.1]
    est = TangentialInterpolator().fit(X, y)
    assert est.solvable_ and est.verdict_.is_definite
    assert np.allclose(est.predict(X), y, atol=1e-10)
    assert est.score(X, y) > -1e-10
    assert est.interpolation_residual() < 1e-10


def test_fit_matrix_values():
    V = np.array([[[0.2, 0.1], [0.0, 0.3]], [[-0.1, 0.0], [0.2j, 0.1]]])
    est = TangentialInterpolator(beta=2).fit([0.3, -0.6], V)
    assert est.predict([0.3]).shape == (1, 2, 2)
    assert np.allclose(est.predict([0.3, -0.6]), V, atol=1e-10)


def test_fit_interpolation_data():
    est = TangentialInterpolator(mu=1).fit(single_node(2))
    assert est.predict([0.75])[0] == pytest.approx(4 / 3)
    assert est.mu_ == 1
    th = est.theta()
    assert th.truncation == 16


def test_parameter_changes_solution():
    p = SchurParameter.constants([[[0.5]]])
    a = TangentialInterpolator(mu=1).fit(single_node(2)).predict([0.1])
    b = TangentialInterpolator(mu=1, parameter=p).fit(single_node(2)).predict([0.1])
    assert abs(a[0] - b[0]) > 1e-4


def test_unsolvable_and_unsupported():
    est = TangentialInterpolator().fit(single_node(1))
    assert est.solvable_ is False and est.solution_ is None
    with pytest.raises(SolverPreconditionError):
        est.predict([0.1])
    a = 1 / np.sqrt(2)
    est = TangentialInterpolator(alpha=2, beta=3).fit([a, -a], [np.sqrt(26 / 15), -np.sqrt(26 / 15)])
    assert est.solvable_ is None
    with pytest.raises(SolverPreconditionError, match="not Hardy"):
        est.predict([0.1])


def test_input_validation():
    with pytest.raises(NotFittedError):
        TangentialInterpolator().predict([0.1])
    with pytest.raises(ValueError):
        TangentialInterpolator().fit([1.2], [0.1])
    with pytest.raises(InvalidArgumentError):
        TangentialInterpolator().fit([0.1])
    with pytest.raises(InvalidArgumentError):
        TangentialInterpolator().fit([0.1, 0.2], [0.1])
    with pytest.raises(InvalidArgumentError):
        TangentialInterpolator().fit(single_node(2), [0.1])
    with pytest.raises(InvalidArgumentError):
        TangentialInterpolator(mu=0.5).fit([0.1], [0.1])
    with pytest.raises(InvalidArgumentError):
        TangentialInterpolator(beta=make_weight_bergman(2), alpha="hardy").fit([0.1], [0.1])


def test_unsolvable_nodes_are_reported():
    est = TangentialInterpolator().fit([0.5, -0.3j, 0.1 + 0.2j], [0.4, 0.1j, -0.2])
    assert est.solvable_ is False and est.verdict_.min_eigenvalue < 0
