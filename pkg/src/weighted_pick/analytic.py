"""Matrix-valued functions on the open unit disk."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, EvaluationError, InvalidArgumentError

__all__ = ["AnalyticMatrixFunction", "constant", "rational", "from_callable"]


@dataclass(frozen=True)
class AnalyticMatrixFunction:
    """An evaluable ``rows x cols`` matrix function on the unit disk.

    Parameters
    ----------
    rows, cols : int
        Shape of every value.
    func : callable
        ``func(z) -> array_like`` of shape ``(rows, cols)``.
    kind : str
        Provenance tag, e.g. ``'closed-form'``, ``'lft'``, ``'parameter'``.
    exceptional : tuple of complex
        Disk points where the function is known to be undefined.
    """

    rows: int
    cols: int
    func: Callable = field(repr=False)
    kind: str = "closed-form"
    exceptional: tuple = ()

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InvalidArgumentError("matrix function dimensions must be positive")

    @property
    def shape(self):
        return (self.rows, self.cols)

    def eval(self, z) -> np.ndarray:
        z = complex(z)
        if not abs(z) < 1:
            raise DomainError(f"evaluation point {z} is outside the open unit disk")
        return self._eval_unchecked(z)

    __call__ = eval

    def _eval_unchecked(self, z: complex) -> np.ndarray:
        try:
            val = np.asarray(self.func(z), dtype=complex)
        except EvaluationError:
            raise
        except (ZeroDivisionError, np.linalg.LinAlgError, FloatingPointError) as exc:
            raise EvaluationError(f"evaluation failed at z = {z}: {exc}", z=z) from exc
        val = val.reshape(self.shape) if val.size == self.rows * self.cols else val
        if val.shape != self.shape:
            raise EvaluationError(f"value at z = {z} has shape {val.shape}, expected {self.shape}", z=z)
        if not np.all(np.isfinite(val)):
            raise EvaluationError(f"non-finite value at z = {z}", z=z)
        return val

    def eval_many(self, zs) -> np.ndarray:
        """Stack values at several points into shape ``(len(zs), rows, cols)``."""
        return np.stack([self.eval(z) for z in np.atleast_1d(zs)])


def from_callable(func, rows, cols, kind="closed-form") -> AnalyticMatrixFunction:
    return AnalyticMatrixFunction(rows, cols, func, kind=kind)


def constant(C) -> AnalyticMatrixFunction:
    """The constant function ``z -> C``."""
    C = np.atleast_2d(np.asarray(C, dtype=complex))
    if C.ndim != 2:
        raise InvalidArgumentError("constant value must be a matrix")
    C.setflags(write=False)
    return AnalyticMatrixFunction(C.shape[0], C.shape[1], lambda z: C, kind="constant")


def rational(numerator, denominator=(1.0,)) -> AnalyticMatrixFunction:
    """``z -> (sum_k A_k z^k) / (sum_k b_k z^k)``.

    Parameters
    ----------
    numerator : sequence of matrices (or scalars)
        Matrix coefficients ``A_0, A_1, ...`` in ascending powers.
    denominator : sequence of complex
        Scalar coefficients ``b_0, b_1, ...`` in ascending powers.
    """
    num = np.asarray([np.atleast_2d(np.asarray(a, dtype=complex)) for a in numerator])
    den = np.asarray(denominator, dtype=complex).ravel()
    if num.ndim != 3 or num.shape[0] == 0:
        raise InvalidArgumentError("numerator must be a non-empty list of equally shaped matrices")
    if den.size == 0 or not np.any(den):
        raise InvalidArgumentError("denominator must be a non-zero polynomial")
    roots = np.roots(den[::-1]) if den.size > 1 else np.array([])
    inside = tuple(complex(r) for r in roots if abs(r) < 1)

    def func(z):
        d = np.polyval(den[::-1], z)
        if abs(d) < 1e-300:
            raise EvaluationError(f"denominator vanishes at z = {z}", z=z)
        acc = np.zeros(num.shape[1:], dtype=complex)
        for a in num[::-1]:
            acc = acc * z + a
        return acc / d

    return AnalyticMatrixFunction(num.shape[1], num.shape[2], func, kind="rational", exceptional=inside)
