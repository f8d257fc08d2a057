"""Linear-fractional parametrization of all solutions.

For data with a positive definite Pick matrix ``P`` and Hardy input
weight, every solution has the form

    S(z) = [Psi(z) Ecal(z) + (z - mu) E k_beta(z, T) P^-1 (mu - T*)^-1 R(z)]
           x [I + (z - mu) N (I - zT)^-1 P^-1 (mu - T*)^-1 R(z)]^-1

with ``R(z) = sum_j sqrt(delta_j) T*^j E* Ecal_j(z) - N*`` and a free
parameter ``Ecal = (Ecal_0, Ecal_1, ...)`` satisfying
``sum_j Ecal_j(z)* Ecal_j(z) <= I``.  ``mu`` is any unimodular point off
the spectrum of ``T*``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import AnalyticMatrixFunction, constant
from .errors import EvaluationError, InvalidArgumentError, SolverPreconditionError, UnsupportedProblemError
from .pick import DEFAULT_PSD_TOL, is_psd, pick_matrix
from .statespace import InterpolationData, kernel_at_operator, tilde_obs_matrix

__all__ = [
    "SchurParameter",
    "ThetaRealization",
    "choose_mu",
    "theta_realization",
    "theta_eval",
    "theta_blocks",
    "theta_identity_residual",
    "solve_parametrized",
    "central_solution",
    "random_schur_parameter",
]

DEFAULT_TRUNCATION = 16
DENOMINATOR_COND_CAP = 1e12
_MU_MIN_DISTANCE = 1e-6
_CONTRACTIVITY_SLACK = 1e-9
_CHECK_POINTS = np.concatenate(
    [[0.0]] + [r * np.exp(2j * np.pi * np.arange(8) / 8) for r in (0.3, 0.6, 0.85, 0.95)])


@dataclass(frozen=True)
class SchurParameter:
    """Finitely supported free parameter ``(Ecal_0, ..., Ecal_J)``.

    Each component is a ``p x q`` matrix function.  Construction checks
    ``sum_j Ecal_j(z)* Ecal_j(z) <= I`` on a fixed sample of the disk.
    """

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise InvalidArgumentError("a Schur parameter needs at least one component")
        shapes = {c.shape for c in comps}
        if len(shapes) != 1:
            raise InvalidArgumentError(f"parameter components disagree in shape: {sorted(shapes)}")
        object.__setattr__(self, "components", comps)
        margin = self.contractivity_margin(_CHECK_POINTS)
        if margin < -_CONTRACTIVITY_SLACK:
            raise InvalidArgumentError(
                f"parameter is not contractive: sum of E_j* E_j exceeds I by {-margin:.3g}")

    @property
    def support_bound(self) -> int:
        return len(self.components) - 1

    @property
    def shape(self):
        return self.components[0].shape

    @classmethod
    def zero(cls, p: int, q: int) -> "SchurParameter":
        return cls((constant(np.zeros((p, q))),))

    @classmethod
    def constants(cls, mats) -> "SchurParameter":
        return cls(tuple(constant(m) for m in mats))

    def values(self, z) -> np.ndarray:
        """Stack of component values at ``z``, shape ``(J+1, p, q)``."""
        return np.stack([c.eval(z) for c in self.components])

    def contractivity_margin(self, points) -> float:
        """``min_z (1 - lambda_max(sum_j Ecal_j(z)* Ecal_j(z)))`` over ``points``."""
        worst = np.inf
        for z in points:
            V = self.values(z)
            G = np.einsum("jab,jac->bc", V.conj(), V)
            worst = min(worst, 1.0 - float(np.linalg.eigvalsh(G)[-1]))
        return worst

    def is_zero(self) -> bool:
        return all(c.kind == "constant" and not np.any(c.eval(0)) for c in self.components)


def random_schur_parameter(p: int, q: int, J: int, rng, scale: float | None = None) -> SchurParameter:
    """Random admissible parameter with ``J + 1`` components.

    ``Ecal_j(z) = b_j(z) K_j`` with ``b_j`` a Blaschke factor, a monomial or
    the constant one, and constant matrices satisfying
    ``sum_j ||K_j||^2 = scale <= 1``.
    """
    rng = np.random.default_rng(rng)
    scale = rng.uniform(0.1, 1.0) if scale is None else scale
    if not 0 <= scale <= 1:
        raise InvalidArgumentError("scale must lie in [0, 1]")
    Ks = [rng.standard_normal((p, q)) + 1j * rng.standard_normal((p, q)) for _ in range(J + 1)]
    norms = np.array([np.linalg.norm(K, 2) for K in Ks])
    share = rng.dirichlet(np.ones(J + 1))
    comps = []
    for K, nrm, s in zip(Ks, norms, share):
        K = K / nrm * np.sqrt(scale * s)
        kind = rng.integers(3)
        if kind == 0:
            comps.append(constant(K))
        elif kind == 1:
            a = 0.9 * rng.uniform() ** 0.5 * np.exp(2j * np.pi * rng.uniform())
            comps.append(AnalyticMatrixFunction(
                p, q, lambda z, K=K, a=a: (z - a) / (1 - np.conj(a) * z) * K, kind="parameter"))
        else:
            m = int(rng.integers(1, 4))
            comps.append(AnalyticMatrixFunction(p, q, lambda z, K=K, m=m: z ** m * K, kind="parameter"))
    return SchurParameter(tuple(comps))


def choose_mu(T, candidates: int = 64) -> complex:
    """Unimodular point farthest from the spectrum of ``T*``.

    Scans ``candidates`` equispaced points (then 512 if none is at distance
    above ``1e-6``); ties go to the smallest angle.
    """
    T = np.atleast_2d(np.asarray(T, dtype=complex))
    spec = np.conj(np.linalg.eigvals(T))
    for n in (candidates, 512):
        mus = np.exp(2j * np.pi * np.arange(n) / n)
        dist = np.min(np.abs(mus[:, None] - spec[None, :]), axis=1) if spec.size else np.ones(n)
        k = int(np.argmax(dist))
        if dist[k] > _MU_MIN_DISTANCE:
            mu = mus[k]
            # snap exact axis points so mu = 1, i, -1, -i come out exact
            return complex(np.round(mu.real, 15), np.round(mu.imag, 15))
    raise InvalidArgumentError("no unimodular point is separated from the spectrum of T*")


def _check_mu(mu, T):
    mu = complex(mu)
    if abs(abs(mu) - 1) > 1e-12:
        raise InvalidArgumentError(f"mu must be unimodular, got |mu| = {abs(mu)}")
    spec = np.conj(np.linalg.eigvals(T))
    if spec.size and np.min(np.abs(mu - spec)) <= _MU_MIN_DISTANCE:
        raise InvalidArgumentError(f"mu = {mu} is too close to the spectrum of T*")
    return mu


def _definite_pick(data: InterpolationData, tol: float):
    if not data.alpha.is_hardy:
        raise UnsupportedProblemError(
            "the parametrization needs a Hardy input weight; for other input weights "
            "only the necessary Pick condition is available")
    P = pick_matrix(data)
    v = is_psd(P, tol)
    if not v.is_definite:
        raise SolverPreconditionError(
            f"Pick matrix is {v.classification.value} (min eigenvalue {v.min_eigenvalue:.3g}); "
            "the parametrization requires it to be positive definite")
    return P, v


@dataclass(frozen=True)
class ThetaRealization:
    """Realization of the coefficient matrix of the linear fractional map.

    ``Theta(z) = I + (z - mu) C_col (I - zT)^-1 P^-1 (mu - T*)^-1 R_row``
    with ``C_col = [Otilde; N]``, ``R_row = [Otilde*, -N*]`` and
    ``Otilde`` the stacked ``sqrt(delta_j) E T^j``, ``j <= truncation``.
    """

    data: InterpolationData
    mu: complex
    truncation: int
    P_inverse: np.ndarray
    min_eigenvalue: float
    tilde_O: np.ndarray

    @property
    def col(self) -> np.ndarray:
        return np.vstack([self.tilde_O, self.data.N])

    @property
    def split(self) -> int:
        """Row index where the ``D`` block starts."""
        return self.tilde_O.shape[0]

    @property
    def signature(self) -> np.ndarray:
        k, q = self.split, self.data.q
        return np.diag(np.concatenate([np.ones(k), -np.ones(q)])).astype(complex)


def theta_realization(data: InterpolationData, mu=None, truncation: int = DEFAULT_TRUNCATION,
                      tol: float = DEFAULT_PSD_TOL) -> ThetaRealization:
    P, v = _definite_pick(data, tol)
    mu = choose_mu(data.T) if mu is None else _check_mu(mu, data.T)
    Ot = tilde_obs_matrix(data.beta, data.E, data.T, truncation)
    Pinv = np.linalg.inv(P)
    return ThetaRealization(data, mu, int(truncation), 0.5 * (Pinv + Pinv.conj().T), v.min_eigenvalue, Ot)


def theta_eval(th: ThetaRealization, z) -> np.ndarray:
    """Full matrix ``Theta(z)``; see :func:`theta_blocks` for ``A, B, C, D``."""
    z = complex(z)
    T = th.data.T
    d = T.shape[0]
    col = th.col
    row = np.hstack([th.tilde_O.conj().T, -th.data.N.conj().T])
    left = np.linalg.solve(np.eye(d) - z * T, th.P_inverse)
    right = np.linalg.solve(th.mu * np.eye(d) - T.conj().T, row)
    return np.eye(col.shape[0], dtype=complex) + (z - th.mu) * col @ left @ right


def theta_blocks(th: ThetaRealization, z):
    M = theta_eval(th, z)
    k = th.split
    return M[:k, :k], M[:k, k:], M[k:, :k], M[k:, k:]


def theta_identity_residual(th: ThetaRealization, z, zeta) -> float:
    """Spectral norm of
    ``(J - Theta(z) J Theta(zeta)*) / (1 - z conj(zeta))
    - C_col (I - zT)^-1 P^-1 (I - conj(zeta) T*)^-1 C_col*``."""
    z, zeta = complex(z), complex(zeta)
    T = th.data.T
    d = T.shape[0]
    Jsig = th.signature
    Tz, Tw = theta_eval(th, z), theta_eval(th, zeta)
    lhs = (Jsig - Tz @ Jsig @ Tw.conj().T) / (1 - z * np.conj(zeta))
    col = th.col
    left = col @ np.linalg.inv(np.eye(d) - z * T)
    right = np.linalg.inv(np.eye(d) - np.conj(zeta) * T.conj().T) @ col.conj().T
    rhs = left @ th.P_inverse @ right
    return float(np.linalg.norm(lhs - rhs, 2))


def solve_parametrized(data: InterpolationData, param: SchurParameter, mu=None,
                       tol: float = DEFAULT_PSD_TOL,
                       cond_cap: float = DENOMINATOR_COND_CAP) -> AnalyticMatrixFunction:
    """Solution attached to a free parameter.

    Raises
    ------
    UnsupportedProblemError
        If the input weight is not the Hardy weight.
    SolverPreconditionError
        If the Pick matrix is not positive definite.

    The returned function raises :class:`EvaluationError` at points where
    the denominator is numerically singular (condition number above
    ``cond_cap``).
    """
    P, _ = _definite_pick(data, tol)
    p, q = data.p, data.q
    if param.shape != (p, q):
        raise InvalidArgumentError(f"parameter components must be {p}x{q}, got {param.shape}")
    mu = choose_mu(data.T) if mu is None else _check_mu(mu, data.T)
    T, E, N, w = data.T, data.E, data.N, data.beta
    d = data.d
    J = param.support_bound
    Th = T.conj().T
    K = np.linalg.solve(P, np.linalg.inv(mu * np.eye(d) - Th))
    sd = np.sqrt(w.delta_array(J))
    # sqrt(delta_j) T*^j E*, j = 0..J
    V = []
    blk = E.conj().T
    for j in range(J + 1):
        V.append(sd[j] * blk)
        blk = Th @ blk
    V = np.stack(V)
    Nh = N.conj().T
    eye_q = np.eye(q, dtype=complex)
    eye_d = np.eye(d, dtype=complex)

    def func(z):
        Ev = param.values(z)
        R = np.einsum("jab,jbc->ac", V, Ev) - Nh
        psi = np.einsum("j,jab->ab", sd * z ** np.arange(J + 1), Ev)
        KR = K @ R
        num = psi + (z - mu) * (E @ kernel_at_operator(w, z, T) @ KR)
        den = eye_q + (z - mu) * (N @ np.linalg.solve(eye_d - z * T, KR))
        if np.linalg.cond(den) > cond_cap:
            raise EvaluationError(f"denominator is singular at z = {z}", z=z)
        return np.linalg.solve(den.T, num.T).T

    return AnalyticMatrixFunction(p, q, func, kind="lft")


def central_solution(data: InterpolationData, mu=None, tol: float = DEFAULT_PSD_TOL) -> AnalyticMatrixFunction:
    """Solution for the zero parameter."""
    return solve_parametrized(data, SchurParameter.zero(data.p, data.q), mu=mu, tol=tol)
