"""JSON problem, parameter and candidate files.

Complex numbers are ``[re, im]`` pairs (a bare real number is accepted on
input); matrices are row-major lists of rows of such pairs.  Weights use
the grammar of :func:`weighted_pick.weights.weight_from_spec`.

Problem file::

    {"alpha": {"family": "bergman", "n": 1},
     "beta":  {"family": "bergman", "n": 2},
     "T": [[[0.75, 0]]], "E": [[[1, 0]]], "N": [[[1.3333333333333333, 0]]],
     "options": {"mu": [1, 0], "truncation": 16, "tol": 1e-9,
                 "grid": {"radii": [0.3, 0.6, 0.85], "angles_per_ring": 8}}}

or, instead of ``T``/``E``/``N``, Nevanlinna-Pick shorthand
``"nodes": [[x, y], ...], "values": [V_1, ...]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .analytic import AnalyticMatrixFunction, constant, rational
from .errors import InvalidArgumentError, WeightedPickError
from .pick import np_data
from .solver import SchurParameter
from .statespace import InterpolationData
from .verify import GridSpec
from .weights import weight_from_spec

__all__ = [
    "ProblemFileError",
    "ProblemFile",
    "encode_complex",
    "decode_complex",
    "encode_matrix",
    "decode_matrix",
    "parse_problem",
    "load_problem",
    "normalized_problem",
    "parse_rational",
    "parse_parameter",
    "load_json",
]

_OPTION_KEYS = {"mu", "truncation", "tol", "grid"}


class ProblemFileError(InvalidArgumentError):
    """A problem, parameter or candidate file could not be parsed."""


def encode_complex(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(obj) -> complex:
    if isinstance(obj, bool):
        raise ProblemFileError(f"not a number: {obj!r}")
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2 and all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj):
        return complex(obj[0], obj[1])
    raise ProblemFileError(f"expected [re, im] pair, got {obj!r}")


def encode_matrix(M) -> list:
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    return [[encode_complex(x) for x in row] for row in M]


def decode_matrix(obj, name="matrix") -> np.ndarray:
    """Decode a row-major matrix; a single pair or number is a 1x1 matrix."""
    try:
        if not isinstance(obj, list) or (obj and not isinstance(obj[0], list)) or _is_pair(obj):
            return np.array([[decode_complex(obj)]])
        rows = [[decode_complex(x) for x in row] for row in obj]
    except ProblemFileError as exc:
        raise ProblemFileError(f"{name}: {exc}") from None
    except TypeError:
        raise ProblemFileError(f"{name}: expected a list of rows") from None
    if not rows or len({len(r) for r in rows}) != 1 or len(rows[0]) == 0:
        raise ProblemFileError(f"{name}: rows must be non-empty and of equal length")
    return np.array(rows, dtype=complex)


def _is_pair(obj):
    return (isinstance(obj, list) and len(obj) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj))


@dataclass(frozen=True)
class ProblemFile:
    data: InterpolationData
    options: dict = field(default_factory=dict)
    nodes: tuple | None = None

    @property
    def mu(self):
        return self.options.get("mu")

    @property
    def truncation(self):
        return self.options.get("truncation")

    @property
    def tol(self):
        return self.options.get("tol")

    @property
    def grid(self):
        return self.options.get("grid")


def _parse_grid(obj) -> GridSpec:
    if not isinstance(obj, dict):
        raise ProblemFileError("grid must be an object")
    try:
        return GridSpec(tuple(obj.get("radii", (0.3, 0.6, 0.85))), int(obj.get("angles_per_ring", 8)),
                        tuple(decode_complex(z) for z in obj.get("extra_points", ())))
    except InvalidArgumentError as exc:
        raise ProblemFileError(f"grid: {exc}") from None


def _parse_options(obj) -> dict:
    if obj is None:
        return {}
    if not isinstance(obj, dict):
        raise ProblemFileError("options must be an object")
    unknown = set(obj) - _OPTION_KEYS
    if unknown:
        raise ProblemFileError(f"unknown options: {sorted(unknown)}")
    out = {}
    if "mu" in obj:
        out["mu"] = decode_complex(obj["mu"])
    if "truncation" in obj:
        J = obj["truncation"]
        if not isinstance(J, int) or isinstance(J, bool) or J < 0:
            raise ProblemFileError("truncation must be a non-negative integer")
        out["truncation"] = J
    if "tol" in obj:
        tol = obj["tol"]
        if not isinstance(tol, (int, float)) or isinstance(tol, bool) or not tol > 0:
            raise ProblemFileError("tol must be a positive number")
        out["tol"] = float(tol)
    if "grid" in obj:
        out["grid"] = _parse_grid(obj["grid"])
    return out


def parse_problem(obj) -> ProblemFile:
    """Build a :class:`ProblemFile` from decoded JSON."""
    if not isinstance(obj, dict):
        raise ProblemFileError("problem file must hold a JSON object")
    raw = {"T", "E", "N"} & set(obj)
    short = {"nodes", "values"} & set(obj)
    if raw and short:
        raise ProblemFileError("give either T/E/N or nodes/values, not both")
    try:
        alpha = weight_from_spec(obj.get("alpha", {"family": "bergman", "n": 1}))
        if "beta" not in obj:
            raise ProblemFileError("problem file needs a 'beta' weight")
        beta = weight_from_spec(obj["beta"])
        options = _parse_options(obj.get("options"))
        if raw:
            missing = {"T", "E", "N"} - raw
            if missing:
                raise ProblemFileError(f"missing matrices: {sorted(missing)}")
            data = InterpolationData(alpha, beta, decode_matrix(obj["T"], "T"),
                                     decode_matrix(obj["E"], "E"), decode_matrix(obj["N"], "N"))
            return ProblemFile(data, options)
        if short != {"nodes", "values"}:
            raise ProblemFileError("problem file needs T/E/N or nodes/values")
        if not isinstance(obj["nodes"], list) or not isinstance(obj["values"], list):
            raise ProblemFileError("nodes and values must be lists")
        nodes = tuple(decode_complex(z) for z in obj["nodes"])
        values = [decode_matrix(v, f"values[{i}]") for i, v in enumerate(obj["values"])]
        data = np_data(nodes, values, alpha=alpha, beta=beta)
        return ProblemFile(data, options, nodes)
    except ProblemFileError:
        raise
    except WeightedPickError as exc:
        raise ProblemFileError(str(exc)) from None


def load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"{path}: invalid JSON ({exc})") from None


def load_problem(path) -> ProblemFile:
    return parse_problem(load_json(path))


def normalized_problem(pf: ProblemFile) -> dict:
    """Raw-matrix form of a problem; parsing it gives back identical data."""
    d = pf.data
    out = {"alpha": d.alpha.to_spec(), "beta": d.beta.to_spec(),
           "T": encode_matrix(d.T), "E": encode_matrix(d.E), "N": encode_matrix(d.N)}
    opts = {}
    if "mu" in pf.options:
        opts["mu"] = encode_complex(pf.options["mu"])
    for key in ("truncation", "tol"):
        if key in pf.options:
            opts[key] = pf.options[key]
    if "grid" in pf.options:
        opts["grid"] = pf.options["grid"].to_spec()
    if opts:
        out["options"] = opts
    return out


def parse_rational(obj, name="candidate") -> AnalyticMatrixFunction:
    """``{"numerator": [A_0, A_1, ...], "denominator": [b_0, ...]}`` or
    ``{"constant": A}``; coefficients in ascending powers."""
    if not isinstance(obj, dict):
        raise ProblemFileError(f"{name} must be an object")
    if "constant" in obj:
        return constant(decode_matrix(obj["constant"], f"{name}.constant"))
    if "numerator" not in obj:
        raise ProblemFileError(f"{name} needs 'numerator' or 'constant'")
    num = obj["numerator"]
    if not isinstance(num, list) or not num:
        raise ProblemFileError(f"{name}.numerator must be a non-empty list")
    coeffs = [decode_matrix(a, f"{name}.numerator[{i}]") for i, a in enumerate(num)]
    den = [decode_complex(b) for b in obj.get("denominator", [1.0])]
    try:
        return rational(coeffs, den)
    except InvalidArgumentError as exc:
        raise ProblemFileError(f"{name}: {exc}") from None


def parse_parameter(obj) -> SchurParameter:
    """``{"components": [<rational spec>, ...]}``."""
    if not isinstance(obj, dict) or not isinstance(obj.get("components"), list):
        raise ProblemFileError("parameter file needs a 'components' list")
    comps = tuple(parse_rational(c, f"components[{i}]") for i, c in enumerate(obj["components"]))
    try:
        return SchurParameter(comps)
    except InvalidArgumentError as exc:
        raise ProblemFileError(f"parameter: {exc}") from None
