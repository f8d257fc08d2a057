"""Weight sequences, reproducing kernels and the weighted Z-transform factor.

A weight sequence ``beta`` defines the weighted Hardy space of analytic
functions ``f = sum f_j z^j`` with ``||f||^2 = sum beta_j |f_j|^2``.  Its
reproducing kernel is ``k(z, conj(zeta)) = sum (z conj(zeta))^j / beta_j``.

For non-increasing ``beta`` the sequence

    delta_0 = 1,   delta_j = 1/beta_j - 1/beta_{j-1}   (j >= 1)

is non-negative and ``(1 - z conj(zeta)) k(z, conj(zeta)) = sum delta_j
(z conj(zeta))^j``.  ``delta_j`` is stored rather than its reciprocal so that
eventually constant weights (``delta_j = 0``) need no special casing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, InvalidArgumentError

__all__ = [
    "WeightSequence",
    "make_weight_bergman",
    "make_weight_explicit",
    "hardy",
    "weight_from_spec",
    "kernel_eval",
    "kernel_matrix",
    "kernel_tilde_eval",
    "kernel_tilde_matrix",
    "psi_apply",
]

#: Indices up to this bound are handled in exact rational arithmetic.
EXACT_LIMIT = 64

_SERIES_RTOL = 1e-15
_SERIES_MAX_TERMS = 1 << 17


@dataclass(frozen=True)
class WeightSequence:
    """A normalized, non-increasing positive weight sequence.

    Use :func:`make_weight_bergman` or :func:`make_weight_explicit` rather
    than the constructor.

    Attributes
    ----------
    family : {'bergman', 'explicit'}
    n : int or None
        Bergman index for ``family='bergman'``.
    head : tuple of float
        Leading weights for ``family='explicit'`` (``head[0] == 1``).
    tail : str
        ``'constant-last'`` or ``'bergman'`` (explicit family only).
    tail_n : int or None
        Bergman index of the continuation when ``tail == 'bergman'``.
    """

    family: str
    n: int | None = None
    head: tuple = ()
    tail: str = "constant-last"
    tail_n: int | None = None
    _exact_cache: dict = field(default_factory=dict, init=False, repr=False,
                               compare=False, hash=False)

    def __post_init__(self):
        if self.family == "bergman":
            if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool) or self.n < 1:
                raise InvalidArgumentError(f"Bergman index must be a positive integer, got {self.n!r}")
            return
        if self.family != "explicit":
            raise InvalidArgumentError(f"unknown weight family {self.family!r}")
        head = self.head
        if len(head) == 0:
            raise InvalidArgumentError("explicit weight needs a non-empty head")
        if head[0] != 1:
            raise InvalidArgumentError("weights must be normalized with beta_0 = 1")
        prev = None
        for j, b in enumerate(head):
            if not (math.isfinite(b) and b > 0):
                raise InvalidArgumentError(f"beta_{j} = {b!r} is not a positive real")
            if prev is not None and b > prev:
                raise InvalidArgumentError(
                    f"weights must be non-increasing: beta_{j} = {b} > beta_{j - 1} = {prev}")
            prev = b
        if self.tail == "bergman":
            if not isinstance(self.tail_n, (int, np.integer)) or self.tail_n < 1:
                raise InvalidArgumentError("bergman tail needs a positive integer index")
        elif self.tail != "constant-last":
            raise InvalidArgumentError(f"unknown tail rule {self.tail!r}")

    # -- exact accessors -------------------------------------------------

    def inv_beta_exact(self, j: int) -> Fraction:
        """Return ``1 / beta_j`` as an exact fraction."""
        if j < 0:
            raise InvalidArgumentError("index must be non-negative")
        cached = self._exact_cache.get(("ib", j))
        if cached is not None:
            return cached
        if self.family == "bergman":
            val = Fraction(math.comb(j + self.n - 1, self.n - 1))
        else:
            L = len(self.head)
            if j < L:
                val = 1 / Fraction(self.head[j])
            elif self.tail == "constant-last":
                val = 1 / Fraction(self.head[-1])
            else:
                # scaled so the continuation meets head[-1] at index L - 1
                m = self.tail_n
                scale = Fraction(math.comb(L - 1 + m - 1, m - 1)) * Fraction(self.head[-1])
                val = Fraction(math.comb(j + m - 1, m - 1)) / scale
        self._exact_cache[("ib", j)] = val
        return val

    def beta_exact(self, j: int) -> Fraction:
        return 1 / self.inv_beta_exact(j)

    def delta_exact(self, j: int) -> Fraction:
        """Return ``delta_j`` exactly."""
        if j == 0:
            return Fraction(1)
        if self.family == "bergman":
            # telescoped binomial: C(j+n-1, n-1) - C(j+n-2, n-1) = C(j+n-2, j)
            return Fraction(math.comb(j + self.n - 2, j)) if self.n >= 2 else Fraction(0)
        return self.inv_beta_exact(j) - self.inv_beta_exact(j - 1)

    # -- floating accessors ----------------------------------------------

    def beta(self, j: int) -> float:
        return 1.0 / self.inv_beta(j)

    def inv_beta(self, j: int) -> float:
        if j <= EXACT_LIMIT:
            return float(self.inv_beta_exact(j))
        if self.family == "bergman":
            return float(math.comb(j + self.n - 1, self.n - 1))
        return float(self.inv_beta_exact(j))

    def delta(self, j: int) -> float:
        if j <= EXACT_LIMIT:
            return float(self.delta_exact(j))
        if self.family == "bergman":
            return float(math.comb(j + self.n - 2, j)) if self.n >= 2 else 0.0
        L = len(self.head)
        if self.tail == "constant-last" and j > L:
            return 0.0
        return self.inv_beta(j) - self.inv_beta(j - 1)

    def inv_beta_array(self, J: int) -> np.ndarray:
        """``1/beta_j`` for ``j = 0..J`` as a float array."""
        return _inv_beta_array(self, int(J))

    def delta_array(self, J: int) -> np.ndarray:
        """``delta_j`` for ``j = 0..J`` as a float array."""
        return _delta_array(self, int(J))

    def ratio_bound(self, j: int) -> float:
        """Upper bound for ``beta_i / beta_{i+1}`` over all ``i >= j``."""
        if self.family == "bergman":
            return (j + self.n) / (j + 1)
        L = len(self.head)
        tail_ratio = 1.0 if self.tail == "constant-last" else (max(j, L - 1) + self.tail_n) / (max(j, L - 1) + 1)
        ratios = [self.head[i] / self.head[i + 1] for i in range(j, L - 1)]
        return max([tail_ratio] + ratios)

    @property
    def is_hardy(self) -> bool:
        """True when every weight equals one."""
        if self.family == "bergman":
            return self.n == 1
        return self.tail == "constant-last" and all(b == 1 for b in self.head)

    def to_spec(self) -> dict:
        """JSON-ready description accepted by :func:`weight_from_spec`."""
        if self.family == "bergman":
            return {"family": "bergman", "n": int(self.n)}
        tail = "constant-last" if self.tail == "constant-last" else {"bergman": int(self.tail_n)}
        return {"family": "explicit", "head": [float(b) for b in self.head], "tail": tail}

    def __str__(self):
        if self.family == "bergman":
            return f"bergman({self.n})"
        return f"explicit(head={list(self.head)}, tail={self.tail}{'' if self.tail_n is None else self.tail_n})"


@lru_cache(maxsize=256)
def _inv_beta_array(w: WeightSequence, J: int) -> np.ndarray:
    arr = np.array([w.inv_beta(j) for j in range(J + 1)], dtype=float)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=256)
def _delta_array(w: WeightSequence, J: int) -> np.ndarray:
    arr = np.array([w.delta(j) for j in range(J + 1)], dtype=float)
    arr.setflags(write=False)
    return arr


def make_weight_bergman(n: int) -> WeightSequence:
    """Weight of the standard weighted Bergman space ``A^2_n``.

    ``beta_j = j! (n-1)! / (j+n-1)!``; ``n = 1`` is the Hardy space.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise InvalidArgumentError(f"Bergman index must be an integer, got {n!r}")
    return WeightSequence("bergman", n=int(n))


def hardy() -> WeightSequence:
    return make_weight_bergman(1)


def make_weight_explicit(head, tail="constant-last") -> WeightSequence:
    """Weight given by its first values and a continuation rule.

    Parameters
    ----------
    head : sequence of float
        ``beta_0, ..., beta_{L-1}`` with ``beta_0 = 1``.
    tail : 'constant-last' or ('bergman', m) or {'bergman': m}
        ``'constant-last'`` repeats ``beta_{L-1}``; the Bergman rule
        continues with ``beta_{L-1} * b_j / b_{L-1}`` where ``b`` is the
        ``A^2_m`` weight.
    """
    head = tuple(float(b) for b in head)
    if tail == "constant-last":
        return WeightSequence("explicit", head=head, tail="constant-last")
    if isinstance(tail, dict) and set(tail) == {"bergman"}:
        return WeightSequence("explicit", head=head, tail="bergman", tail_n=int(tail["bergman"]))
    if isinstance(tail, (tuple, list)) and len(tail) == 2 and tail[0] == "bergman":
        return WeightSequence("explicit", head=head, tail="bergman", tail_n=int(tail[1]))
    raise InvalidArgumentError(f"unknown tail rule {tail!r}")


def weight_from_spec(spec) -> WeightSequence:
    """Parse ``{"family": "bergman", "n": 2}`` or an explicit weight spec.

    A :class:`WeightSequence` is returned unchanged and a bare integer is
    read as a Bergman index.
    """
    if isinstance(spec, WeightSequence):
        return spec
    if isinstance(spec, (int, np.integer)) and not isinstance(spec, bool):
        return make_weight_bergman(int(spec))
    if not isinstance(spec, dict) or "family" not in spec:
        raise InvalidArgumentError(f"cannot interpret weight spec {spec!r}")
    family = spec["family"]
    if family == "bergman":
        if "n" not in spec:
            raise InvalidArgumentError("bergman weight spec needs 'n'")
        return make_weight_bergman(spec["n"])
    if family == "explicit":
        if "head" not in spec:
            raise InvalidArgumentError("explicit weight spec needs 'head'")
        return make_weight_explicit(spec["head"], spec.get("tail", "constant-last"))
    raise InvalidArgumentError(f"unknown weight family {family!r}")


# -- kernels ---------------------------------------------------------------

def _check_disk(*points):
    for p in points:
        a = np.abs(np.asarray(p))
        if a.size and not np.all(a < 1):
            raise DomainError(f"points must lie in the open unit disk (max modulus {a.max():.6g})")


def _series_terms_needed(w: WeightSequence, r: float) -> int:
    """Index ``J`` such that the tail ``sum_{j>J} r^j / beta_j`` is below
    ``1e-15`` relative to the leading term."""
    if r == 0:
        return 0
    J = 16
    while J < _SERIES_MAX_TERMS:
        q = r * w.ratio_bound(J + 1)
        if q < 1:
            term = math.exp((J + 1) * math.log(r)) * w.inv_beta(J + 1)
            if term / (1 - q) < _SERIES_RTOL:
                return J
        J *= 2
    raise DomainError(f"kernel series does not converge fast enough at |z conj(zeta)| = {r}")


def _power_series(coeffs_fn, w, x):
    x = np.asarray(x, dtype=complex)
    r = float(np.max(np.abs(x))) if x.size else 0.0
    J = _series_terms_needed(w, r)
    c = coeffs_fn(J)
    # Horner evaluation over the whole array
    out = np.full(x.shape, c[J], dtype=complex)
    for j in range(J - 1, -1, -1):
        out = out * x + c[j]
    return out


def _kernel_of_product(w: WeightSequence, x):
    if w.family == "bergman":
        return (1.0 - np.asarray(x, dtype=complex)) ** (-w.n)
    return _power_series(w.inv_beta_array, w, x)


def _kernel_tilde_of_product(w: WeightSequence, x):
    if w.family == "bergman":
        return (1.0 - np.asarray(x, dtype=complex)) ** (-(w.n - 1))
    return _power_series(w.delta_array, w, x)


def kernel_eval(w: WeightSequence, z: complex, zeta: complex) -> complex:
    """Reproducing kernel ``k_beta(z, conj(zeta))``.

    >>> kernel_eval(make_weight_bergman(2), 0.5, 0.5)
    (1.7777777777777777+0j)
    """
    _check_disk(z, zeta)
    return complex(_kernel_of_product(w, complex(z) * np.conj(complex(zeta))))


def kernel_matrix(w: WeightSequence, zs, zetas=None) -> np.ndarray:
    """Matrix ``[k_beta(z_i, conj(zeta_j))]``; ``zetas`` defaults to ``zs``."""
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    zetas = zs if zetas is None else np.atleast_1d(np.asarray(zetas, dtype=complex))
    _check_disk(zs, zetas)
    return _kernel_of_product(w, zs[:, None] * np.conj(zetas)[None, :])


def kernel_tilde_eval(w: WeightSequence, z: complex, zeta: complex) -> complex:
    """Factored kernel ``(1 - z conj(zeta)) k_beta(z, conj(zeta)) = sum delta_j (z conj(zeta))^j``."""
    _check_disk(z, zeta)
    return complex(_kernel_tilde_of_product(w, complex(z) * np.conj(complex(zeta))))


def kernel_tilde_matrix(w: WeightSequence, zs, zetas=None) -> np.ndarray:
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    zetas = zs if zetas is None else np.atleast_1d(np.asarray(zetas, dtype=complex))
    _check_disk(zs, zetas)
    return _kernel_tilde_of_product(w, zs[:, None] * np.conj(zetas)[None, :])


def psi_apply(w: WeightSequence, y, z: complex) -> np.ndarray:
    """Apply the row ``[sqrt(delta_0), sqrt(delta_1) z, sqrt(delta_2) z^2, ...]``.

    Parameters
    ----------
    y : array_like, shape (J+1, ...)
        Finitely supported sequence ``y_0, ..., y_J`` of output vectors
        (or matrices); entries past ``J`` are taken to be zero.
    z : complex
        Point of the open unit disk.
    """
    _check_disk(z)
    y = np.asarray(y, dtype=complex)
    if y.ndim == 0:
        raise InvalidArgumentError("y must be a sequence")
    J = y.shape[0] - 1
    weights = np.sqrt(w.delta_array(J)) * complex(z) ** np.arange(J + 1)
    return np.tensordot(weights, y, axes=(0, 0))
