"""Input checks shared by the estimator and the command line."""
from __future__ import annotations

import numpy as np

from .errors import DomainError, InvalidArgumentError
from .weights import WeightSequence, weight_from_spec


def check_disk_points(z, name="points") -> np.ndarray:
    """1-d complex array of points strictly inside the unit disk."""
    try:
        arr = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    except (TypeError, ValueError):
        raise InvalidArgumentError(f"{name} must be complex numbers") from None
    if arr.size == 0:
        raise InvalidArgumentError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} must be finite")
    if not np.all(np.abs(arr) < 1):
        raise DomainError(f"{name} must lie in the open unit disk")
    return arr


def as_complex_matrix(a, name="matrix") -> np.ndarray:
    try:
        M = np.atleast_2d(np.asarray(a, dtype=complex))
    except (TypeError, ValueError):
        raise InvalidArgumentError(f"{name} must be a complex matrix") from None
    if M.ndim != 2:
        raise InvalidArgumentError(f"{name} must be two-dimensional, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidArgumentError(f"{name} has non-finite entries")
    return M


def check_values(values, k: int) -> np.ndarray:
    """Stack ``k`` target values into shape ``(k, p, q)``; scalars become 1x1."""
    arr = np.asarray(values, dtype=complex)
    if arr.ndim == 1 and arr.size == k:
        arr = arr.reshape(k, 1, 1)
    elif arr.ndim == 2 and arr.shape[0] == k:
        arr = arr.reshape(k, 1, arr.shape[1])
    if arr.ndim != 3 or arr.shape[0] != k:
        raise InvalidArgumentError(f"expected {k} values, got array of shape {np.shape(values)}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("values must be finite")
    return arr


def check_weight(w) -> WeightSequence:
    return weight_from_spec(w)


def check_unimodular(mu, tol=1e-12) -> complex:
    mu = complex(mu)
    if abs(abs(mu) - 1) > tol:
        raise InvalidArgumentError(f"mu must be unimodular, got |mu| = {abs(mu)}")
    return mu
