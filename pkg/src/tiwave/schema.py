"""JSON schema for step-function documents, and input validation."""

from __future__ import annotations

import jsonschema

from .errors import UnsupportedPhaseError
from .intervals import STEPFUNCTION_SCHEMA_ID, StepFunction

_INT_STRING = {"type": "string", "pattern": "^-?[0-9]+$"}

RATIONAL = {
    "type": "object",
    "properties": {"num": _INT_STRING, "den": {"type": "string", "pattern": "^[0-9]*[1-9][0-9]*$"}},
    "required": ["num", "den"],
    "additionalProperties": False,
}

STEPFUNCTION_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": STEPFUNCTION_SCHEMA_ID,
    "title": "Step function on the frequency axis",
    "description": (
        "Finitely supported piecewise-constant real function. Each piece is the "
        "half-open interval [lo, hi) with lo < hi; endpoints are exact rational "
        "multiples of pi given as {pi_coeff: {num, den}}; values are a + b*sqrt(2) "
        "with rational a, b. Overlapping pieces are summed."
    ),
    "type": "object",
    "properties": {
        "schema": {"type": "string"},
        "convention": {"type": "string"},
        "pieces": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "lo": {"$ref": "#/$defs/qpi"},
                    "hi": {"$ref": "#/$defs/qpi"},
                    "value": {"$ref": "#/$defs/quadreal"},
                },
                "required": ["lo", "hi", "value"],
            },
        },
    },
    "required": ["pieces"],
    "$defs": {
        "rational": RATIONAL,
        "qpi": {
            "type": "object",
            "properties": {"pi_coeff": {"$ref": "#/$defs/rational"}},
            "required": ["pi_coeff"],
            "additionalProperties": False,
        },
        "quadreal": {
            "type": "object",
            "properties": {"a": {"$ref": "#/$defs/rational"}, "b": {"$ref": "#/$defs/rational"}},
            "required": ["a", "b"],
        },
    },
}

_PHASE_KEYS = ("im", "imag", "phase", "theta")


def load_step_function(doc) -> StepFunction:
    """Validate a decoded JSON document and build the step function.

    Raises :class:`jsonschema.ValidationError` for malformed documents,
    :class:`UnsupportedPhaseError` if a value carries a complex part and
    ``ValueError`` for empty intervals.
    """
    jsonschema.validate(doc, STEPFUNCTION_SCHEMA)
    for piece in doc["pieces"]:
        extra = [k for k in _PHASE_KEYS if k in piece["value"]]
        if extra:
            raise UnsupportedPhaseError(f"complex frequency values are not supported (got {extra})")
    return StepFunction.from_json(doc)
