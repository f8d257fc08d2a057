"""scikit-learn style front end to the interpolation solver."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_disk_points, check_unimodular, check_values, check_weight
from .errors import InvalidArgumentError, SolverPreconditionError
from .pick import DEFAULT_PSD_TOL, np_data, solvability
from .solver import DEFAULT_TRUNCATION, SchurParameter, choose_mu, solve_parametrized, theta_realization
from .statespace import InterpolationData
from .verify import check_interpolation


class TangentialInterpolator(BaseEstimator):
    """Contractive multiplier interpolating prescribed data.

    Parameters
    ----------
    beta : int, dict or WeightSequence, default=2
        Target weight; an int ``n`` means the Bergman space ``A^2_n``.
    alpha : int, dict or WeightSequence, default=1
        Input weight.  Only the Hardy weight (``1``) can be solved; other
        weights get a Pick-matrix verdict but no solution.
    mu : complex, optional
        Unimodular normalization point.  Picked automatically when None.
    truncation : int, default=16
        Number of terms kept in the realization returned by :meth:`theta`.
    tol : float, default=1e-9
        Relative tolerance of the Pick-matrix classification.
    parameter : SchurParameter, optional
        Free parameter; None means the central solution.

    Attributes
    ----------
    data_ : InterpolationData
    pick_matrix_ : ndarray
    verdict_ : PsdVerdict
    solvable_ : bool or None
        None when the verdict is inconclusive.
    mu_ : complex
    solution_ : AnalyticMatrixFunction or None
        None unless the Pick matrix is positive definite and ``alpha`` is Hardy.

    Examples
    --------
    >>> est = TangentialInterpolator(beta=2).fit([0.5], [0.7])
    >>> bool(abs(est.predict([0.5])[0] - 0.7) < 1e-12)
    True
    """

    def __init__(self, beta=2, alpha=1, mu=None, truncation=DEFAULT_TRUNCATION,
                 tol=DEFAULT_PSD_TOL, parameter=None):
        self.beta = beta
        self.alpha = alpha
        self.mu = mu
        self.truncation = truncation
        self.tol = tol
        self.parameter = parameter

    def fit(self, X, y=None):
        """Fit to nodes ``X`` with values ``y``, or to an InterpolationData ``X``.

        Values may be scalars (shape ``(k,)``), rows (``(k, q)``) or
        matrices (``(k, p, q)``).
        """
        if isinstance(X, InterpolationData):
            if y is not None:
                raise InvalidArgumentError("y must be None when X is an InterpolationData")
            data = X
        else:
            nodes = check_disk_points(X, "nodes")
            if y is None:
                raise InvalidArgumentError("values y are required")
            data = np_data(nodes, check_values(y, nodes.size),
                           alpha=check_weight(self.alpha), beta=check_weight(self.beta))
        report = solvability(data, self.tol)
        self.data_ = data
        self.pick_matrix_ = report.pick
        self.verdict_ = report.verdict
        self.solvable_ = report.solvable
        self.mu_ = choose_mu(data.T) if self.mu is None else check_unimodular(self.mu)
        self.solution_ = None
        if data.alpha.is_hardy and report.verdict.is_definite:
            param = self.parameter or SchurParameter.zero(data.p, data.q)
            self.solution_ = solve_parametrized(data, param, mu=self.mu_, tol=self.tol)
        return self

    def _solution(self):
        check_is_fitted(self, "data_")
        if self.solution_ is None:
            raise SolverPreconditionError(
                f"no solution available: Pick matrix is {self.verdict_.classification.value}"
                + ("" if self.data_.alpha.is_hardy else " and the input weight is not Hardy"))
        return self.solution_

    def predict(self, X):
        """Values ``S(z)`` at the points ``X``: shape ``(k,)`` for scalar
        problems, ``(k, p, q)`` otherwise."""
        S = self._solution()
        out = S.eval_many(check_disk_points(X))
        return out[:, 0, 0] if S.shape == (1, 1) else out

    def score(self, X, y):
        """Negative largest deviation ``max_i ||S(x_i) - y_i||``."""
        pred = self.predict(X)
        target = check_values(y, len(pred))
        pred = np.asarray(pred).reshape(target.shape)
        return -float(max(np.linalg.norm(a - b, 2) for a, b in zip(pred, target)))

    def interpolation_residual(self) -> float:
        return check_interpolation(self.data_, self._solution()).residual

    def theta(self):
        self._solution()
        return theta_realization(self.data_, mu=self.mu_, truncation=self.truncation, tol=self.tol)
