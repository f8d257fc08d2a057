"""Output pairs, observability gramians, Stein equations and the
tangential functional calculus.

Conventions: ``T`` is ``d x d``, ``E`` is ``p x d`` (output space of
dimension ``p``), ``N`` is ``q x d`` (input space of dimension ``q``).
``X*`` denotes the conjugate transpose.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .analytic import AnalyticMatrixFunction
from .errors import DomainError, InvalidArgumentError, UnstablePairError
from .weights import WeightSequence, weight_from_spec

__all__ = [
    "InterpolationData",
    "GramianResult",
    "TangentialResult",
    "spectral_radius",
    "growth_rate",
    "solve_stein",
    "kernel_at_operator",
    "obs_apply",
    "obs_coeffs",
    "obs_function",
    "obs_gramian",
    "obs_gramian_series",
    "tilde_obs_matrix",
    "stein_residual",
    "taylor_coeffs",
    "tangential_eval",
    "shift_adjoint_coeffs",
]

MAX_STATE_DIM = 64
STABILITY_MARGIN = 1e-8
_KRON_LIMIT = 16
_MAX_TANGENTIAL_TERMS = 8192


def _as_matrix(a, name):
    a = np.asarray(a, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    elif a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise InvalidArgumentError(f"{name} must be a matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise InvalidArgumentError(f"{name} has non-finite entries")
    return a


def _H(a):
    return a.conj().T


def spectral_radius(T) -> float:
    """Spectral radius of a square matrix."""
    T = np.asarray(T, dtype=complex)
    if T.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(T))))


def growth_rate(T, m: int = 32) -> float:
    """Rate ``q`` used in tail bounds for sums over powers of ``T``.

    ``max(rho(T), ||T^m||^(1/m))``, kept below one by falling back to
    ``(1 + rho) / 2`` when the power norm has not yet settled.
    """
    T = np.asarray(T, dtype=complex)
    rho = spectral_radius(T)
    pm = np.linalg.norm(np.linalg.matrix_power(T, m), 2) ** (1.0 / m)
    q = max(rho, pm)
    return q if q < 1 else max(rho, 0.5 * (1 + rho))


@dataclass(frozen=True)
class InterpolationData:
    """Data ``(T, E, N)`` of a left-tangential interpolation problem.

    A solution is a contractive multiplier ``S`` from the ``alpha``-weighted
    space into the ``beta``-weighted space with
    ``sum_j T*^j E* S_j = N*``.
    """

    alpha: WeightSequence
    beta: WeightSequence
    T: np.ndarray
    E: np.ndarray
    N: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", weight_from_spec(self.alpha))
        object.__setattr__(self, "beta", weight_from_spec(self.beta))
        T = _as_matrix(self.T, "T")
        E = _as_matrix(self.E, "E")
        N = _as_matrix(self.N, "N")
        d = T.shape[0]
        if T.shape != (d, d):
            raise InvalidArgumentError(f"T must be square, got shape {T.shape}")
        if d > MAX_STATE_DIM:
            raise InvalidArgumentError(f"state dimension {d} exceeds {MAX_STATE_DIM}")
        if E.shape[1] != d or N.shape[1] != d:
            raise InvalidArgumentError(
                f"E and N need {d} columns, got E{E.shape} and N{N.shape}")
        rho = spectral_radius(T)
        if rho >= 1 - STABILITY_MARGIN:
            raise UnstablePairError(f"spectral radius of T is {rho:.12g}; need < 1")
        for name, a in (("T", T), ("E", E), ("N", N)):
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @property
    def d(self) -> int:
        return self.T.shape[0]

    @property
    def p(self) -> int:
        return self.E.shape[0]

    @property
    def q(self) -> int:
        return self.N.shape[0]

    @property
    def rho(self) -> float:
        return spectral_radius(self.T)

    def replace(self, **changes) -> "InterpolationData":
        kw = dict(alpha=self.alpha, beta=self.beta, T=self.T, E=self.E, N=self.N)
        kw.update(changes)
        return InterpolationData(**kw)


@dataclass(frozen=True)
class GramianResult:
    """Observability gramian with the route used to compute it."""

    matrix: np.ndarray
    method: str
    tail_bound: float = 0.0


@dataclass(frozen=True)
class TangentialResult:
    value: np.ndarray
    tail_estimate: float
    terms: int
    radius: float
    warning: bool = False


def _check_stable(T):
    rho = spectral_radius(T)
    if rho >= 1 - STABILITY_MARGIN:
        raise UnstablePairError(f"spectral radius of T is {rho:.12g}; need < 1")
    return rho


def solve_stein(T, rhs) -> np.ndarray:
    """Solve ``X - T* X T = rhs`` for ``X``.

    Small systems are linearized with Kronecker products; larger ones go
    through SciPy's Schur-based discrete Lyapunov solver.
    """
    T = _as_matrix(T, "T")
    rhs = _as_matrix(rhs, "rhs")
    d = T.shape[0]
    if T.shape != (d, d) or rhs.shape != (d, d):
        raise InvalidArgumentError(f"shape mismatch: T{T.shape}, rhs{rhs.shape}")
    _check_stable(T)
    Th = _H(T)
    if d <= _KRON_LIMIT:
        # column-major vec:  vec(T* X T) = (T^T kron T*) vec(X)
        K = np.eye(d * d, dtype=complex) - np.kron(T.T, Th)
        X = np.linalg.solve(K, rhs.reshape(-1, order="F")).reshape((d, d), order="F")
    else:
        X = scipy.linalg.solve_discrete_lyapunov(Th, rhs, method="bilinear")
    if np.allclose(rhs, _H(rhs), rtol=0, atol=1e-14 * max(1.0, np.abs(rhs).max())):
        X = 0.5 * (X + _H(X))
    return X


def kernel_at_operator(w: WeightSequence, z: complex, T) -> np.ndarray:
    """``k_beta(z, T) = sum_j z^j T^j / beta_j``."""
    z = complex(z)
    if not abs(z) < 1:
        raise DomainError(f"point {z} is outside the open unit disk")
    T = _as_matrix(T, "T")
    d = T.shape[0]
    eye = np.eye(d, dtype=complex)
    if w.family == "bergman":
        R = np.linalg.inv(eye - z * T)
        return np.linalg.matrix_power(R, w.n)
    rate = growth_rate(T) * abs(z)
    acc = np.zeros((d, d), dtype=complex)
    P = eye.copy()
    j = 0
    while True:
        acc += w.inv_beta(j) * P
        j += 1
        P = z * (P @ T)
        q = rate * w.ratio_bound(j)
        if j > 8 and q < 1:
            tail = w.inv_beta(j) * np.linalg.norm(P, 2) / (1 - q)
            if tail <= 1e-16 * max(1.0, np.linalg.norm(acc, 2)):
                return acc
        if j > 200_000:
            raise DomainError("kernel series at operator argument failed to converge")


def obs_apply(w: WeightSequence, E, T, x, z: complex) -> np.ndarray:
    """Value at ``z`` of the observability image ``E k_beta(z, T) x``."""
    E = _as_matrix(E, "E")
    _check_stable(T)
    return E @ kernel_at_operator(w, z, T) @ np.asarray(x, dtype=complex)


def obs_coeffs(w: WeightSequence, E, T, x, count: int) -> np.ndarray:
    """First ``count`` Taylor coefficients ``E T^j x / beta_j`` of the
    observability image of ``x``; shape ``(count,) + (E @ x).shape``."""
    E = _as_matrix(E, "E")
    T = _as_matrix(T, "T")
    v = np.asarray(x, dtype=complex)
    out = []
    for j in range(count):
        out.append(w.inv_beta(j) * (E @ v))
        v = T @ v
    return np.array(out)


def obs_function(w: WeightSequence, E, T, x=None) -> AnalyticMatrixFunction:
    """``z -> E k_beta(z, T) X`` as a matrix function (``X`` defaults to
    the identity)."""
    E = _as_matrix(E, "E")
    T = _as_matrix(T, "T")
    _check_stable(T)
    X = np.eye(T.shape[0], dtype=complex) if x is None else np.asarray(x, dtype=complex)
    if X.ndim == 1:
        X = X[:, None]
    return AnalyticMatrixFunction(E.shape[0], X.shape[1],
                                  lambda z: E @ kernel_at_operator(w, z, T) @ X)


def _series_gramian(coef_fn, ratio_fn, E, T, J=None):
    """``sum_j c_j (E T^j)* (E T^j)``; fixed ``J`` or run to a tail bound."""
    d = T.shape[0]
    G = np.zeros((d, d), dtype=complex)
    ET = E.copy()
    q = growth_rate(T) ** 2
    j = 0
    while True:
        c = coef_fn(j)
        term = c * (_H(ET) @ ET)
        G += term
        if J is not None and j >= J:
            break
        ET = ET @ T
        j += 1
        if J is None:
            r = q * ratio_fn(j)
            if j > 8 and r < 1:
                last = coef_fn(j) * np.linalg.norm(ET, 2) ** 2
                if last / (1 - r) <= 1e-17 * max(1.0, np.linalg.norm(G, 2)):
                    break
            if j > 200_000:
                raise UnstablePairError("gramian series failed to converge")
    nxt = coef_fn(j + 1) * np.linalg.norm(ET @ T, 2) ** 2
    r = q * ratio_fn(j + 1)
    tail = nxt / (1 - r) if r < 1 else math.inf
    return 0.5 * (G + _H(G)), tail


def obs_gramian_series(w: WeightSequence, E, T, J: int) -> GramianResult:
    """Gramian ``sum_{j<=J} T*^j E* E T^j / beta_j`` truncated at ``J``."""
    E = _as_matrix(E, "E")
    T = _as_matrix(T, "T")
    _check_stable(T)
    G, tail = _series_gramian(w.inv_beta, w.ratio_bound, E, T, J=J)
    return GramianResult(G, "series", tail)


def obs_gramian(w: WeightSequence, E, T) -> GramianResult:
    """Observability gramian ``sum_j T*^j E* E T^j / beta_j``.

    Hardy weight: one Stein solve ``G - T* G T = E* E``.  Bergman weight
    ``A^2_n``: ``n`` nested Stein solves ``G_k - T* G_k T = G_{k-1}``.
    Other weights: series summed to a tail bound.
    """
    E = _as_matrix(E, "E")
    T = _as_matrix(T, "T")
    if T.shape[0] != T.shape[1] or E.shape[1] != T.shape[0]:
        raise InvalidArgumentError(f"shape mismatch: E{E.shape}, T{T.shape}")
    _check_stable(T)
    if w.family == "bergman":
        G = solve_stein(T, _H(E) @ E)
        for _ in range(w.n - 1):
            G = solve_stein(T, G)
        return GramianResult(G, "stein-solve" if w.n == 1 else "bergman-recursion", 0.0)
    G, tail = _series_gramian(w.inv_beta, w.ratio_bound, E, T)
    return GramianResult(G, "series", tail)


def tilde_obs_matrix(w: WeightSequence, E, T, J: int) -> np.ndarray:
    """Stacked blocks ``sqrt(delta_j) E T^j`` for ``j = 0..J``."""
    if J < 0:
        raise InvalidArgumentError("truncation index must be non-negative")
    E = _as_matrix(E, "E")
    T = _as_matrix(T, "T")
    _check_stable(T)
    sd = np.sqrt(w.delta_array(J))
    blocks = []
    ET = E.copy()
    for j in range(J + 1):
        blocks.append(sd[j] * ET)
        ET = ET @ T
    return np.vstack(blocks)


def stein_residual(G, T, rhs) -> float:
    """Spectral norm of ``G - T* G T - rhs``."""
    G = _as_matrix(G, "G")
    T = _as_matrix(T, "T")
    rhs = _as_matrix(rhs, "rhs")
    if not (G.shape == T.shape == rhs.shape and G.shape[0] == G.shape[1]):
        raise InvalidArgumentError(f"shape mismatch: G{G.shape}, T{T.shape}, rhs{rhs.shape}")
    return float(np.linalg.norm(G - _H(T) @ G @ T - rhs, 2))


def _circle_samples(f: AnalyticMatrixFunction, radius, n):
    pts = radius * np.exp(2j * np.pi * np.arange(n) / n)
    return np.stack([f.eval(z) for z in pts])


def taylor_coeffs(f: AnalyticMatrixFunction, count: int = 64, radius: float = 0.5,
                  n_fft: int = 256) -> np.ndarray:
    """Taylor coefficients of ``f`` from samples on ``|z| = radius``.

    Returns an array of shape ``(count, rows, cols)``.  Coefficient ``j``
    carries an aliasing error of at most
    ``sup|f| radius^(n_fft - j) / (1 - radius^n_fft)`` when ``f`` is
    analytic and bounded on the unit disk.
    """
    if not 0 < radius < 1:
        raise InvalidArgumentError(f"radius must lie in (0, 1), got {radius}")
    if count < 1 or n_fft < 4 * count:
        raise InvalidArgumentError(f"need n_fft >= 4 * count, got n_fft={n_fft}, count={count}")
    samples = _circle_samples(f, radius, n_fft)
    c = np.fft.fft(samples, axis=0)[:count] / n_fft
    return c / (radius ** np.arange(count))[:, None, None]


def tangential_eval(w: WeightSequence, E, T, f: AnalyticMatrixFunction, M: int | None = None,
                    radius: float | None = None, tol: float = 1e-13) -> TangentialResult:
    """Tangential functional calculus ``sum_j T*^j E* f_j``.

    The Taylor coefficients of ``f`` are extracted on a circle whose radius
    sits between the spectral radius of ``T`` and one, so the summed terms
    stay bounded even when ``T`` is close to the boundary.  ``M`` is the
    number of terms kept; by default it is sized for a ``tol`` tail.
    """
    E = _as_matrix(E, "E")
    T = _as_matrix(T, "T")
    if E.shape[0] != f.rows:
        raise InvalidArgumentError(f"E has {E.shape[0]} rows but f has {f.rows}")
    _check_stable(T)
    q = growth_rate(T)
    r = float(radius) if radius is not None else min(max(0.5, math.sqrt(q)), 1 - 1e-6)
    ratio = q / r
    if M is None:
        M = 16 if ratio == 0 else max(16, int(math.ceil(math.log(tol) / math.log(ratio))) + 1)
        M = min(M, _MAX_TANGENTIAL_TERMS)
    n_fft = 1 << max(8, int(math.ceil(math.log2(4 * (M + 1)))))
    coeffs = taylor_coeffs(f, count=M + 1, radius=r, n_fft=n_fft)
    sup_f = max(np.linalg.norm(s, 2) for s in _circle_samples(f, r, 64))
    Th = _H(T)
    acc = np.zeros((T.shape[0], f.cols), dtype=complex)
    # Horner in T*:  sum_j T*^j (E* f_j)
    for j in range(M, -1, -1):
        acc = Th @ acc + _H(E) @ coeffs[j]
    tail = np.linalg.norm(E, 2) * sup_f * ratio ** (M + 1) / (1 - ratio) if ratio < 1 else math.inf
    warn = tail > 1e-10 * max(1.0, np.linalg.norm(acc, 2))
    if warn:
        warnings.warn(f"tangential evaluation with {M} terms has tail estimate {tail:.3g}",
                      RuntimeWarning, stacklevel=2)
    return TangentialResult(acc, float(tail), M, r, warn)


def shift_adjoint_coeffs(w: WeightSequence, coeffs) -> list:
    """Coefficients of the adjoint of ``f -> z f`` on the weighted space:
    entry ``k`` is ``(beta_{k+1} / beta_k) f_{k+1}``."""
    coeffs = list(coeffs)
    return [w.inv_beta(k) / w.inv_beta(k + 1) * np.asarray(coeffs[k + 1])
            for k in range(len(coeffs) - 1)]
