"""JSON encoding of states and results. Rationals travel as "p/q" strings."""

from __future__ import annotations

import enum
import json
import sys
from dataclasses import fields, is_dataclass
from fractions import Fraction

from .errors import DimensionMismatch, InvalidState
from .vectors import SchmidtVector, parse


def rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def state_to_json(vector: SchmidtVector) -> dict:
    return {
        "dim": vector.dim,
        "coefficients": [rational(c) for c in vector],
        "normalized": vector.total == 1,
    }


def state_from_json(obj) -> SchmidtVector:
    if isinstance(obj, list):
        obj = {"dim": len(obj), "coefficients": obj}
    if not isinstance(obj, dict) or "coefficients" not in obj:
        raise InvalidState("a state is an object with 'dim' and 'coefficients'")
    coeffs = obj["coefficients"]
    if not isinstance(coeffs, list):
        raise InvalidState("'coefficients' must be a list")
    dim = obj.get("dim", len(coeffs))
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise DimensionMismatch(f"'dim' must be an integer, got {dim!r}")
    return parse(coeffs, dim, bool(obj.get("normalized", True)))


def loads(text: str):
    # parse_float keeps 0.33 exact instead of rounding through binary floats
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InvalidState(f"malformed JSON: {exc}") from exc


def read_json(path: str):
    if path == "-":
        return loads(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise InvalidState(f"cannot read {path}: {exc.strerror}") from exc


def load_state(path: str) -> SchmidtVector:
    return state_from_json(read_json(path))


def to_jsonable(value):
    """Recursively turn results into plain JSON values."""
    if isinstance(value, SchmidtVector):
        return state_to_json(value)
    if isinstance(value, Fraction):
        return rational(value)
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(to_jsonable(v) for v in value)
    if is_dataclass(value):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in fields(value)}
    return value


def dumps(value, pretty: bool = False) -> str:
    return json.dumps(to_jsonable(value), indent=2 if pretty else None)
