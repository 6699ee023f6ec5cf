"""JSON helpers shared by the serializers.

Rationals are written as ``{"num": p, "den": q}``; integers stay integers.
Every document the package writes carries ``"schema_version": 1``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

SCHEMA_VERSION = 1


def frac_to_json(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def frac_from_json(x) -> Fraction:
    if isinstance(x, dict):
        return Fraction(int(x["num"]), int(x["den"]))
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def rational_matrix_to_json(m) -> list[list[dict]]:
    return [[frac_to_json(x) for x in row] for row in m]


def rational_matrix_from_json(m) -> list[list[Fraction]]:
    return [[frac_from_json(x) for x in row] for row in m]


def int_matrix_to_json(m) -> list[list[int]]:
    return [[int(x) for x in row] for row in m]


def dumps(doc: dict[str, Any]) -> str:
    """Stable serialisation: sorted keys, fixed separators, trailing newline."""
    doc = {"schema_version": SCHEMA_VERSION, **doc}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def fmt_rational(x) -> str:
    """Render as ``p/q`` (or ``p`` when integral); never as a decimal."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
