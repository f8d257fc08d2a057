"""Certification of candidate multipliers.

Contractivity is tested by sampling the kernel
``k_beta(z, conj w) I - S(z) S(w)* k_alpha(z, conj w)`` on a finite grid.
An indefinite sampled Gram matrix disproves contractivity; a positive one
only means the candidate was not falsified on that grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .analytic import AnalyticMatrixFunction
from .errors import InvalidArgumentError
from .pick import DEFAULT_PSD_TOL, PsdClass, PsdVerdict, is_psd, kernel_block_matrix, np_data, pick_matrix
from .statespace import InterpolationData, tangential_eval
from .weights import kernel_matrix, make_weight_bergman, weight_from_spec

__all__ = [
    "GridSpec",
    "default_grid",
    "multiplier_kernel_gram",
    "check_contractive",
    "contractivity_witness",
    "InterpolationCheck",
    "check_interpolation",
    "counterexample_function",
    "CounterexampleReport",
    "counterexample_report",
    "REFERENCE_KHAT",
]

MAX_GRID_POINTS = 400
DEFAULT_RADII = (0.3, 0.6, 0.85)
DEFAULT_ANGLES = 8


@dataclass(frozen=True)
class GridSpec:
    """Rings of equispaced points plus extra points, all inside the disk."""

    radii: tuple = DEFAULT_RADII
    angles_per_ring: int = DEFAULT_ANGLES
    extra_points: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        object.__setattr__(self, "extra_points", tuple(complex(z) for z in self.extra_points))
        if self.angles_per_ring < 1:
            raise InvalidArgumentError("angles_per_ring must be positive")
        if any(not 0 < r < 1 for r in self.radii):
            raise InvalidArgumentError("ring radii must lie in (0, 1)")
        if any(not abs(z) < 1 for z in self.extra_points):
            raise InvalidArgumentError("extra grid points must lie in the open unit disk")
        if len(self.points()) > MAX_GRID_POINTS:
            raise InvalidArgumentError(f"grid has more than {MAX_GRID_POINTS} points")

    def points(self) -> np.ndarray:
        ring = np.exp(2j * np.pi * np.arange(self.angles_per_ring) / self.angles_per_ring)
        pts = [r * ring for r in self.radii] + [np.asarray(self.extra_points, dtype=complex)]
        out = []
        for z in np.concatenate(pts):
            if not any(abs(z - u) < 1e-12 for u in out):
                out.append(complex(z))
        return np.array(out, dtype=complex)

    def with_points(self, extra) -> "GridSpec":
        return GridSpec(self.radii, self.angles_per_ring, self.extra_points + tuple(extra))

    def to_spec(self) -> dict:
        return {"radii": list(self.radii), "angles_per_ring": self.angles_per_ring,
                "extra_points": [[z.real, z.imag] for z in self.extra_points]}


def default_grid(extra=()) -> GridSpec:
    """Three rings ``0.3, 0.6, 0.85`` of eight points, plus ``extra``."""
    return GridSpec(DEFAULT_RADII, DEFAULT_ANGLES, tuple(extra))


def _points_of(points):
    if isinstance(points, GridSpec):
        return points.points()
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    if not np.all(np.abs(pts) < 1):
        raise InvalidArgumentError("sample points must lie in the open unit disk")
    return pts


def multiplier_kernel_gram(S: AnalyticMatrixFunction, alpha, beta, points) -> np.ndarray:
    """Sampled Gram matrix with blocks
    ``k_beta(z_i, conj z_j) I - S(z_i) S(z_j)* k_alpha(z_i, conj z_j)``."""
    alpha, beta = weight_from_spec(alpha), weight_from_spec(beta)
    pts = _points_of(points)
    V = S.eval_many(pts)
    G = kernel_block_matrix(kernel_matrix(beta, pts), kernel_matrix(alpha, pts), V)
    return 0.5 * (G + G.conj().T)


def check_contractive(S: AnalyticMatrixFunction, alpha, beta, grid=None,
                      tol: float = DEFAULT_PSD_TOL) -> PsdVerdict:
    """PSD verdict on the sampled kernel Gram matrix.

    ``indefinite`` is a proof that ``S`` is not a contractive multiplier;
    any other verdict is evidence only.
    """
    grid = default_grid() if grid is None else grid
    return is_psd(multiplier_kernel_gram(S, alpha, beta, grid), tol)


def contractivity_witness(verdict: PsdVerdict, points, block: int) -> tuple:
    """The two sample points carrying most of the witness eigenvector."""
    pts = _points_of(points)
    if verdict.witness is None:
        return ()
    mass = np.linalg.norm(np.asarray(verdict.witness).reshape(len(pts), block), axis=1)
    order = np.argsort(mass)[::-1][:2]
    return tuple(complex(pts[i]) for i in order)


@dataclass(frozen=True)
class InterpolationCheck:
    residual: float
    tail_estimate: float
    passed: bool
    value: np.ndarray = field(repr=False, default=None)

    def __float__(self):
        return self.residual


def check_interpolation(data: InterpolationData, S: AnalyticMatrixFunction, M: int | None = None,
                        tol: float = 1e-8) -> InterpolationCheck:
    """Residual ``|| sum_j T*^j E* S_j - N* ||`` (spectral norm)."""
    if S.shape != (data.p, data.q):
        raise InvalidArgumentError(f"candidate must be {data.p}x{data.q}, got {S.shape}")
    res = tangential_eval(data.beta, data.E, data.T, S, M=M)
    r = float(np.linalg.norm(res.value - data.N.conj().T, 2))
    return InterpolationCheck(r, res.tail_estimate, r <= tol, res.value)


# -- the two-point problem from A^2_2 into A^2_3 ---------------------------

#: Reference value of the Schur-complement entry at (0.1, 0.1) obtained
#: with the unscaled border ``(1 - 4z^4)/(4 - z^4)`` for ``Ktilde(z, 0)``.
REFERENCE_KHAT = -0.93276

_NODE = 1 / math.sqrt(2)
_VALUE = math.sqrt(26 / 15)
_C = math.sqrt(15 / 13)


def _k(n, z, w):
    return (1 - np.asarray(z, dtype=complex) * np.conj(w)) ** (-n)


def _forced(z):
    return _C * z * (z * z + 6) / (4 - z ** 4)


def counterexample_function() -> AnalyticMatrixFunction:
    """``sqrt(15/13) z (z^2 + 6) / (4 - z^4)``, the only candidate compatible
    with the singular Pick matrix of the two-point problem
    ``S(+-1/sqrt 2) = +-sqrt(26/15)`` from ``A^2_2`` to ``A^2_3``."""
    return AnalyticMatrixFunction(1, 1, lambda z: [[_forced(z)]], kind="closed-form")


def _ks(z, w):
    """Hermitian kernel ``k_3(z, conj w) - k_2(z, conj w) S(z) conj(S(w))``."""
    return _k(3, z, w) - _k(2, z, w) * _forced(z) * np.conj(_forced(w))


def _ktilde(z, w):
    return _ks(z, w) - 15 / ((4 - z ** 4) * (4 - np.conj(w) ** 4))


def _khat_unscaled_border(z, w):
    # border entries taken as (1 - 4z^4)/(4 - z^4), i.e. without the factor
    # 1/4 that Ktilde(z, 0) actually carries
    wb = np.conj(w)
    return _ktilde(z, w) - 16 * (1 - 4 * z ** 4) * (1 - 4 * wb ** 4) / ((4 - z ** 4) * (4 - wb ** 4))


def _khat_schur(z, w):
    return _ktilde(z, w) - _ktilde(z, 0) * _ktilde(0, w) / _ktilde(0, 0)


def _sample_points(n=20):
    # deterministic spiral through the disk, avoiding the nodes
    t = np.arange(n)
    return 0.9 * np.sqrt((t + 0.5) / n) * np.exp(2.399963229728653j * t)


@dataclass
class CounterexampleReport:
    items: dict
    conclusion: str
    tolerance: float

    @property
    def failed(self) -> list:
        return [k for k, v in self.items.items() if not v["passed"]]

    @property
    def passed(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        return {"passed": self.passed, "failed": self.failed, "tolerance": self.tolerance,
                "conclusion": self.conclusion, "items": self.items}

    def summary(self) -> str:
        lines = []
        for key, item in self.items.items():
            lines.append(f"({key}) {'PASS' if item['passed'] else 'FAIL'}  {item['title']}")
        lines.append(f"conclusion: {self.conclusion}")
        return "\n".join(lines)


def counterexample_report(tol: float = 5e-4) -> CounterexampleReport:
    """Rerun the two-point ``A^2_2 -> A^2_3`` example end to end.

    Items: (a) the Pick matrix is ``16/15 [[1, 1], [1, 1]]`` and positive
    semidefinite; (b) the singular Pick block forces the closed-form
    candidate; (c) the kernel section at ``1/sqrt 2`` is ``4/(4 - z^4)``;
    (d) the unscaled-border Schur-complement cascade gives ``-0.93276`` at
    ``(0.1, 0.1)`` within ``tol``; (e) the non-existence conclusion is backed
    by an actual positivity violation.
    """
    a, v = _NODE, _VALUE
    a2, a3 = make_weight_bergman(2), make_weight_bergman(3)
    items = {}

    data = np_data([a, -a], [v, -v], alpha=a2, beta=a3)
    P = pick_matrix(data)
    expected = 16 / 15 * np.ones((2, 2))
    err = float(np.abs(P - expected).max())
    verdict = is_psd(P)
    items["a"] = {
        "title": "Pick matrix equals 16/15 [[1,1],[1,1]] and is positive semidefinite",
        "passed": err <= 1e-12 and verdict.classification is PsdClass.POSITIVE_SEMIDEFINITE,
        "pick": [[P[i, j].real for j in range(2)] for i in range(2)],
        "max_abs_error": err,
        "classification": verdict.classification.value,
        "eigenvalues": list(verdict.eigenvalues),
    }

    zs = _sample_points()
    # k3(z,a) - v k2(z,a) S = k3(z,-a) + v k2(z,-a) S, solved for S
    S_lin = (_k(3, zs, a) - _k(3, zs, -a)) / (v * (_k(2, zs, a) + _k(2, zs, -a)))
    S_cf = _forced(zs)
    ident = (_k(3, zs, a) - v * _k(2, zs, a) * S_cf) - (_k(3, zs, -a) + v * _k(2, zs, -a) * S_cf)
    node_err = max(abs(_forced(a) - v), abs(_forced(-a) + v))
    items["b"] = {
        "title": "singular Pick block forces S(z) = sqrt(15/13) z(z^2+6)/(4-z^4)",
        "passed": float(np.abs(ident).max()) <= 1e-10 and float(np.abs(S_lin - S_cf).max()) <= 1e-10
        and node_err <= 1e-12,
        "identity_residual": float(np.abs(ident).max()),
        "solved_vs_closed_form": float(np.abs(S_lin - S_cf).max()),
        "node_error": node_err,
    }

    sec = np.abs(_ks(zs, a) - 4 / (4 - zs ** 4))
    items["c"] = {
        "title": "K_S(z, 1/sqrt2) = 4/(4 - z^4)",
        "passed": float(sec.max()) <= 1e-10,
        "max_abs_error": float(sec.max()),
        "value_at_0.1": complex(_ks(0.1, a)).real,
    }

    unscaled = float(np.real(_khat_unscaled_border(0.1, 0.1)))
    schur = float(np.real(_khat_schur(0.1, 0.1)))
    bordered = np.array([[_ks(x, y) for y in (a, 0.0, 0.1)] for x in (a, 0.0, 0.1)])
    bordered_eigs = np.linalg.eigvalsh(0.5 * (bordered + bordered.conj().T))
    items["d"] = {
        "title": f"unscaled-border cascade gives Khat(0.1,0.1) = {REFERENCE_KHAT} within {tol:g}",
        "passed": abs(unscaled - REFERENCE_KHAT) <= tol,
        "khat_unscaled_border": unscaled,
        "deviation": abs(unscaled - REFERENCE_KHAT),
        "ktilde_border_at_0.1": float(np.real(_ktilde(0.1, 0.0))),
        "unscaled_border_at_0.1": (1 - 4 * 0.1 ** 4) / (4 - 0.1 ** 4),
        "khat_schur_complement": schur,
        "bordered_kernel_eigenvalues": [float(x) for x in bordered_eigs],
    }

    grid = default_grid([0.0, 0.1, a, -a])
    gv = check_contractive(counterexample_function(), a2, a3, grid)
    disproved = gv.classification is PsdClass.INDEFINITE or schur < -1e-12
    items["e"] = {
        "title": "necessary condition holds and a positivity violation rules out a solution",
        "passed": bool(items["a"]["passed"] and disproved),
        "grid_classification": gv.classification.value,
        "grid_min_eigenvalue": gv.min_eigenvalue,
        "grid_tolerance": gv.tolerance_used,
        "khat_schur_complement": schur,
    }
    if items["e"]["passed"]:
        conclusion = "necessary condition holds, solution does not exist"
    else:
        conclusion = ("necessary condition holds; non-existence NOT confirmed: the forced candidate "
                      f"is not falsified on the grid (min eigenvalue {gv.min_eigenvalue:.3g}) and the "
                      f"consistent Schur complement at (0.1, 0.1) is {schur:+.6f}")
    return CounterexampleReport(items, conclusion, tol)
