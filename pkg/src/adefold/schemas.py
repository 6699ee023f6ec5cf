"""JSON schemas for the documents the command line reads."""

from __future__ import annotations

import jsonschema

from .jsonio import SCHEMA_VERSION

_int_vector = {"type": "array", "items": {"type": "integer"}}
_int_matrix = {"type": "array", "items": _int_vector}
_version = {"const": SCHEMA_VERSION}

CONTRACTION_SCHEMA = {
    "type": "object",
    "required": ["components"],
    "additionalProperties": False,
    "properties": {
        "schema_version": _version,
        "description": {"type": "string"},
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "type"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "type": {
                        "type": "object",
                        "required": ["kind", "rank"],
                        "additionalProperties": False,
                        "properties": {
                            "kind": {"enum": ["A", "D", "E"]},
                            "rank": {"type": "integer", "minimum": 1},
                        },
                    },
                    "monodromy_generators": _int_matrix,
                    "embedding": {
                        "type": "object",
                        "required": ["divisor_classes"],
                        "additionalProperties": False,
                        "properties": {
                            "divisor_classes": _int_matrix,
                            "fiber_classes": _int_matrix,
                        },
                    },
                    "expected": {
                        "type": "object",
                        "additionalProperties": False,
                        "properties": {
                            "folded_type": {"type": "string"},
                            "weyl_order": {"type": "integer"},
                            "pi_order": {"type": "integer"},
                            "flag_orders": {"type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3},
                            "split": {"type": "boolean"},
                        },
                    },
                },
            },
        },
        "ambient": {
            "type": "object",
            "required": ["gram"],
            "additionalProperties": False,
            "properties": {"gram": _int_matrix},
        },
        "expected": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"total_order": {"type": "integer"}},
        },
    },
}

LATTICE_SCHEMA = {
    "type": "object",
    "required": ["ambient", "sublattice"],
    "additionalProperties": False,
    "properties": {
        "schema_version": _version,
        "description": {"type": "string"},
        "ambient": {
            "type": "object",
            "required": ["gram"],
            "additionalProperties": False,
            "properties": {"gram": _int_matrix},
        },
        "sublattice": {
            "type": "object",
            "required": ["basis"],
            "additionalProperties": False,
            "properties": {"basis": _int_matrix, "coroots": _int_matrix},
        },
        "expected": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "pi_order": {"type": "integer"},
                "flag_orders": {"type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3},
                "split": {"type": "boolean"},
                "definiteness": {"enum": ["positive", "negative", "indefinite", "degenerate"]},
            },
        },
    },
}


def validate(doc, schema) -> None:
    """Raise jsonschema.ValidationError when ``doc`` does not fit ``schema``."""
    jsonschema.validate(doc, schema)


def kind_of(doc) -> str:
    """``contraction`` or ``lattice``, judged by the top-level keys."""
    if isinstance(doc, dict) and "components" in doc:
        return "contraction"
    if isinstance(doc, dict) and "sublattice" in doc:
        return "lattice"
    raise jsonschema.ValidationError("document has neither 'components' nor 'sublattice'")
