"""Pick matrices, positive-semidefiniteness verdicts and solvability."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .statespace import InterpolationData, obs_gramian
from .weights import hardy, kernel_matrix, weight_from_spec

__all__ = [
    "PsdClass",
    "PsdVerdict",
    "SolvabilityReport",
    "is_psd",
    "pick_matrix",
    "np_data",
    "np_pick_closed_form",
    "kernel_block_matrix",
    "solvability",
]

DEFAULT_PSD_TOL = 1e-9
_HERMITIAN_TOL = 1e-10


class PsdClass(str, enum.Enum):
    POSITIVE_DEFINITE = "positive_definite"
    POSITIVE_SEMIDEFINITE = "positive_semidefinite"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class PsdVerdict:
    """Eigenvalue-based classification of a Hermitian matrix.

    ``witness`` is a unit eigenvector for ``min_eigenvalue``.
    """

    classification: PsdClass
    min_eigenvalue: float
    tolerance_used: float
    eigenvalues: tuple = ()
    witness: np.ndarray | None = None

    @property
    def is_psd(self) -> bool:
        return self.classification is not PsdClass.INDEFINITE

    @property
    def is_definite(self) -> bool:
        return self.classification is PsdClass.POSITIVE_DEFINITE


def is_psd(M, tol: float = DEFAULT_PSD_TOL) -> PsdVerdict:
    """Classify a Hermitian matrix by its smallest eigenvalue.

    The threshold is relative: ``tol * max(1, largest eigenvalue)``.
    Smallest eigenvalue above the threshold means positive definite, within
    it semidefinite, below minus the threshold indefinite.

    Raises
    ------
    InvalidArgumentError
        If ``M`` is not square or departs from Hermitian symmetry by more
        than ``1e-10`` relative.
    """
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {M.shape}")
    scale = max(1.0, float(np.abs(M).max())) if M.size else 1.0
    if np.abs(M - M.conj().T).max(initial=0.0) > _HERMITIAN_TOL * scale:
        raise InvalidArgumentError("matrix is not Hermitian")
    H = 0.5 * (M + M.conj().T)
    vals, vecs = np.linalg.eigh(H)
    thresh = tol * max(1.0, float(vals[-1]))
    lo = float(vals[0])
    if lo >= thresh:
        cls = PsdClass.POSITIVE_DEFINITE
    elif lo >= -thresh:
        cls = PsdClass.POSITIVE_SEMIDEFINITE
    else:
        cls = PsdClass.INDEFINITE
    return PsdVerdict(cls, lo, thresh, tuple(float(v) for v in vals), vecs[:, 0])


def pick_matrix(data: InterpolationData) -> np.ndarray:
    """``G_{beta,E,T} - G_{alpha,N,T}``, the difference of observability
    gramians.  For Hardy ``alpha`` its positive semidefiniteness is
    equivalent to solvability."""
    G_beta = obs_gramian(data.beta, data.E, data.T).matrix
    G_alpha = obs_gramian(data.alpha, data.N, data.T).matrix
    P = G_beta - G_alpha
    return 0.5 * (P + P.conj().T)


def _values_array(values, k):
    vals = [np.atleast_2d(np.asarray(v, dtype=complex)) for v in values]
    if len(vals) != k:
        raise InvalidArgumentError(f"{k} nodes but {len(vals)} values")
    shapes = {v.shape for v in vals}
    if len(shapes) != 1:
        raise InvalidArgumentError(f"values must share one shape, got {sorted(shapes)}")
    return np.stack(vals)


def np_data(nodes, values, alpha=None, beta=None) -> InterpolationData:
    """Nevanlinna-Pick conditions ``S(z_i) = V_i`` as operator data.

    ``T = diag(conj(z_i) I_p)``, ``E = [I_p ... I_p]`` and
    ``N = [V_1* ... V_k*]`` so that the tangential condition reads
    ``S(z_i) = V_i``.  ``alpha`` defaults to the Hardy weight and ``beta``
    to the Bergman weight ``A^2_2``.
    """
    nodes = np.atleast_1d(np.asarray(nodes, dtype=complex))
    k = nodes.size
    if k == 0:
        raise InvalidArgumentError("at least one interpolation node is required")
    if not np.all(np.abs(nodes) < 1):
        raise InvalidArgumentError("interpolation nodes must lie in the open unit disk")
    if len(np.unique(np.round(nodes, 14))) != k:
        raise InvalidArgumentError("interpolation nodes must be distinct")
    V = _values_array(values, k)
    p, q = V.shape[1:]
    T = np.kron(np.diag(nodes.conj()), np.eye(p))
    E = np.kron(np.ones((1, k)), np.eye(p))
    N = np.hstack([v.conj().T for v in V])
    alpha = hardy() if alpha is None else weight_from_spec(alpha)
    beta = weight_from_spec(2 if beta is None else beta)
    return InterpolationData(alpha, beta, T, E, N)


def np_pick_closed_form(nodes, values, alpha=None, beta=None) -> np.ndarray:
    """Block matrix ``[k_beta(z_i, conj z_j) I - V_i V_j* k_alpha(z_i, conj z_j)]``."""
    nodes = np.atleast_1d(np.asarray(nodes, dtype=complex))
    V = _values_array(values, nodes.size)
    alpha = hardy() if alpha is None else weight_from_spec(alpha)
    beta = weight_from_spec(2 if beta is None else beta)
    return kernel_block_matrix(kernel_matrix(beta, nodes), kernel_matrix(alpha, nodes), V)


def kernel_block_matrix(Kb, Ka, V) -> np.ndarray:
    """Blocks ``Kb[i, j] I - Ka[i, j] V_i V_j*`` for values ``V`` of shape
    ``(k, p, q)``."""
    k, p = V.shape[:2]
    VV = np.einsum("iab,jcb->iajc", V, V.conj())
    M = Kb[:, None, :, None] * np.eye(p)[None, :, None, :] - Ka[:, None, :, None] * VV
    return M.reshape(k * p, k * p)


@dataclass(frozen=True)
class SolvabilityReport:
    """PSD verdict on the Pick matrix.

    ``conclusive`` is True when the verdict settles existence: always for a
    Hardy input weight, and for other input weights only when the Pick
    matrix is indefinite (positivity is then merely necessary).
    """

    verdict: PsdVerdict
    conclusive: bool
    solvable: bool | None
    pick: np.ndarray
    note: str = ""


def solvability(data: InterpolationData, tol: float = DEFAULT_PSD_TOL) -> SolvabilityReport:
    P = pick_matrix(data)
    v = is_psd(P, tol)
    if data.alpha.is_hardy:
        return SolvabilityReport(v, True, v.is_psd, P,
                                 "Pick matrix positivity is necessary and sufficient")
    if not v.is_psd:
        return SolvabilityReport(v, True, False, P,
                                 "Pick matrix positivity is necessary; it fails")
    return SolvabilityReport(v, False, None, P,
                             "input weight is not Hardy: Pick matrix positivity is necessary only")
