"""JSON serialization of triples, boundary parameters and CLI case files.

Complex numbers are written as ``[re, im]`` pairs; matrices as nested lists
of such pairs (real matrices may use plain numbers).  Case files carry a
``version`` field and are validated against :data:`CASE_SCHEMA`, which
rejects unknown keys.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema
import numpy as np

from .errors import SchemaError
from .triple import BoundaryParameter, DiscreteTriple

SCHEMA_VERSION = 1

# --------------------------------------------------------------------------
# complex arrays


def encode_complex(z) -> list | float:
    """Scalar or array to JSON: complex entries become ``[re, im]``."""
    a = np.asarray(z)
    if a.ndim == 0:
        c = complex(a)
        return [c.real, c.imag]
    return [encode_complex(x) for x in a]


def decode_complex(obj):
    """Inverse of :func:`encode_complex`; plain numbers are accepted as real entries."""
    if isinstance(obj, (int, float)):
        return complex(obj)
    if (isinstance(obj, list) and len(obj) == 2
            and all(isinstance(v, (int, float)) for v in obj)):
        return complex(obj[0], obj[1])
    raise SchemaError(f"not a complex number: {obj!r}")


def decode_matrix(obj) -> np.ndarray:
    """Nested list of complex entries to a 2-D array (real dtype if all imaginary parts vanish)."""
    if not isinstance(obj, list) or not obj or not all(isinstance(row, list) for row in obj):
        raise SchemaError("matrix must be a non-empty list of rows")
    rows = [[decode_complex(v) for v in row] for row in obj]
    if len({len(r) for r in rows}) != 1:
        raise SchemaError("matrix rows have unequal lengths")
    a = np.array(rows, dtype=complex)
    return a.real.copy() if np.all(a.imag == 0) else a


def decode_lambdas(obj) -> list[complex]:
    """A number, or a list whose entries are numbers or ``[re, im]`` pairs.

    A list of plain numbers is a list of real points, so a single complex
    point has to be nested: ``[[-1, 1]]``.
    """
    if isinstance(obj, (int, float)):
        return [complex(obj)]
    if not isinstance(obj, list) or not obj:
        raise SchemaError("lambda must be a number or a non-empty list")
    return [decode_complex(v) for v in obj]


# --------------------------------------------------------------------------
# triples and parameters


def triple_to_json(t: DiscreteTriple) -> dict:
    out = {"name": t.name}
    for key in ("T_act", "W", "Wb", "G0", "G1"):
        out[key] = encode_complex(getattr(t, key))
    rows = t.interior_rows
    out["interior_rows"] = [int(i) for i in rows] if rows.ndim == 1 else encode_complex(rows)
    return out


def triple_from_json(obj: dict) -> DiscreteTriple:
    _validate(obj, TRIPLE_SCHEMA, "triple")
    mats = {key: decode_matrix(obj[key]) for key in ("T_act", "W", "Wb", "G0", "G1")}
    rows = obj.get("interior_rows")
    if rows is not None:
        rows = np.asarray(rows, dtype=int) if all(isinstance(i, int) for i in rows) else decode_matrix(rows)
    return DiscreteTriple(name=obj.get("name", "triple"), interior_rows=rows, **mats)


def parameter_to_json(theta: BoundaryParameter) -> dict:
    return {"X": encode_complex(theta.X), "Y": encode_complex(theta.Y), "kind": theta.kind}


def parameter_from_json(obj) -> BoundaryParameter:
    """Accepts ``{"X", "Y"}``, ``{"operator": B}``, ``{"inverse_of": B}``,
    ``"pure_multivalued"`` / ``"zero"`` (the latter two need the boundary dimension,
    see :func:`parameter_from_spec`)."""
    _validate(obj, PARAMETER_SCHEMA, "parameter")
    if "X" in obj:
        return BoundaryParameter(decode_matrix(obj["X"]), decode_matrix(obj["Y"]), obj.get("kind", "general"))
    if "operator" in obj:
        return BoundaryParameter.operator(decode_matrix(obj["operator"]))
    return BoundaryParameter.inverse_of(decode_matrix(obj["inverse_of"]))


def parameter_from_spec(obj, m: int) -> BoundaryParameter:
    if obj == "pure_multivalued":
        return BoundaryParameter.pure_multivalued(m)
    if obj == "zero":
        return BoundaryParameter.zero(m)
    theta = parameter_from_json(obj)
    if theta.m != m:
        raise SchemaError(f"parameter acts on C^{theta.m}, triple boundary space is C^{m}")
    return theta


# --------------------------------------------------------------------------
# schemas

_NUMBER = {"type": "number"}
_COMPLEX = {"oneOf": [_NUMBER, {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2}]}
_MATRIX = {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": _COMPLEX}}
_LAMBDA = {"oneOf": [_NUMBER, {"type": "array", "minItems": 1, "items": _COMPLEX}]}

TRIPLE_SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "T_act": _MATRIX, "W": _MATRIX, "Wb": _MATRIX, "G0": _MATRIX, "G1": _MATRIX,
        "interior_rows": {"oneOf": [{"type": "array", "items": {"type": "integer", "minimum": 0}}, _MATRIX]},
    },
    "required": ["T_act", "W", "Wb", "G0", "G1"],
    "additionalProperties": False,
}

PARAMETER_SCHEMA = {
    "oneOf": [
        {"type": "object", "properties": {"X": _MATRIX, "Y": _MATRIX, "kind": {"type": "string"}},
         "required": ["X", "Y"], "additionalProperties": False},
        {"type": "object", "properties": {"operator": _MATRIX}, "required": ["operator"],
         "additionalProperties": False},
        {"type": "object", "properties": {"inverse_of": _MATRIX}, "required": ["inverse_of"],
         "additionalProperties": False},
    ]
}

_PARAMETER_SPEC = {"oneOf": [{"enum": ["pure_multivalued", "zero"]}, PARAMETER_SCHEMA]}

_MULTIPLIER = {
    "oneOf": [
        {"enum": ["dirichlet", "neumann"]},
        {"type": "object", "properties": {"const": _NUMBER}, "required": ["const"],
         "additionalProperties": False},
        {"type": "object", "properties": {"mode_seq": {"type": "array", "items": _NUMBER, "minItems": 1}},
         "required": ["mode_seq"], "additionalProperties": False},
        {"type": "object",
         "properties": {"gap": {"type": "object", "properties": {"base": _NUMBER, "r": _NUMBER},
                                "additionalProperties": False}},
         "required": ["gap"], "additionalProperties": False},
    ]
}

_WINDOW = {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2, "maxItems": 2}

_COMMON = {
    "version": {"const": SCHEMA_VERSION},
    "name": {"type": "string"},
    "lambda": _LAMBDA,
    "seed": {"type": "integer", "minimum": 0},
    "out": {"type": "string"},
    "tolerance": {
        "type": "object",
        "properties": {"exponent": {"type": "number", "exclusiveMinimum": 0},
                       "krein": {"type": "number", "exclusiveMinimum": 0},
                       "trace": {"type": "number", "exclusiveMinimum": 0},
                       "weyl": {"type": "number", "exclusiveMinimum": 0}},
        "additionalProperties": False,
    },
}


def _problem(name: str, extra: dict, required=()) -> dict:
    return {"type": "object",
            "properties": {**_COMMON, "problem": {"const": name}, **extra},
            "required": ["version", "problem", *required],
            "additionalProperties": False}


CASE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "qbtriple case file",
    "oneOf": [
        _problem("sl1d", {
            "q": {"oneOf": [{"const": "zero"}, {"type": "array", "items": _NUMBER, "minItems": 64}]},
            "N_grid": {"type": "integer", "minimum": 64},
            "B": {"type": "array", "items": _MATRIX},
            "theta": {"type": "array", "items": _PARAMETER_SPEC},
            "interval": {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2},
        }),
        _problem("disk", {
            "K": {"type": "integer", "minimum": 16},
            "pair": {"enum": ["robin_vs_neumann", "dirichlet_vs_neumann", "robin_pair", "gamma", "weyl"]},
            "theta": _MULTIPLIER,
            "theta2": _MULTIPLIER,
            "window": _WINDOW,
        }),
        _problem("delta", {
            "strength": _NUMBER, "K": {"type": "integer", "minimum": 16},
            "R": {"type": "number", "exclusiveMinimum": 1},
            "pair": {"enum": ["delta_vs_free", "delta_vs_dirichlet", "free_vs_dirichlet", "free_vs_neumann"]},
            "window": _WINDOW,
        }),
        _problem("delta_prime", {
            "strength": _NUMBER, "K": {"type": "integer", "minimum": 16},
            "R": {"type": "number", "exclusiveMinimum": 1},
            "pair": {"enum": ["delta_prime_vs_free", "delta_prime_vs_neumann", "free_vs_neumann"]},
            "window": _WINDOW,
        }),
        _problem("synthetic", {
            "N": {"type": "integer", "minimum": 2}, "m": {"type": "integer", "minimum": 1},
            "real": {"type": "boolean"},
            "theta": {"type": "array", "items": _PARAMETER_SPEC},
        }),
        _problem("triple", {
            "triple": TRIPLE_SCHEMA,
            "theta": {"type": "array", "items": _PARAMETER_SPEC},
        }, required=["triple"]),
    ],
}


def _validate(obj, schema: dict, what: str) -> None:
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"invalid {what} at {path}: {exc.message}") from None


def validate_case(obj) -> dict:
    """Validate a parsed case file; returns it unchanged or raises :class:`SchemaError`.

    ``oneOf`` failures are reported against the branch selected by ``problem``
    so that diagnostics name the offending key.
    """
    if not isinstance(obj, dict):
        raise SchemaError("case file must be a JSON object")
    problem = obj.get("problem")
    branches = {b["properties"]["problem"]["const"]: b for b in CASE_SCHEMA["oneOf"]}
    if problem not in branches:
        raise SchemaError(f"invalid case at problem: {problem!r} is not one of {sorted(branches)}")
    _validate(obj, branches[problem], "case")
    return obj


def load_case(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read case file {path}: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"case file {path} is not valid JSON: {exc}") from None
    return validate_case(obj)


def multiplier_from_spec(obj):
    """Disk boundary multiplier from its case-file form."""
    from .disk2d import BoundaryMultiplier

    if obj == "dirichlet":
        return BoundaryMultiplier.dirichlet()
    if obj == "neumann":
        return BoundaryMultiplier.neumann()
    if "const" in obj:
        return BoundaryMultiplier.const(obj["const"])
    if "mode_seq" in obj:
        return BoundaryMultiplier.mode_seq(obj["mode_seq"])
    gap = obj["gap"]
    return BoundaryMultiplier.gap_sequence(gap.get("base", 1.0), gap.get("r", 1.0))


def dump_json(obj, path: str | Path) -> None:
    """Write JSON with sorted keys and a trailing newline (deterministic bytes)."""
    Path(path).write_text(json.dumps(to_jsonable(obj), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def to_jsonable(obj):
    """Recursively convert numpy scalars/arrays and complex numbers for ``json``."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        c = complex(obj)
        return c.real if c.imag == 0 else [c.real, c.imag]
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if np.isfinite(f) else str(f)
    return obj
