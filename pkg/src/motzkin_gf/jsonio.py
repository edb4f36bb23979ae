"""Stable JSON form of polynomials and series.

A polynomial is ``{"variables": [...], "terms": [{"coeff", "exp", "q"}, ...]}``
with terms in graded-lexicographic exponent order and coefficients as exact
decimal fraction strings. ``q`` is the half-integer area (QH exponent / 2).
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List

from .polyring import VARIABLES, Poly, Series

JSON_VARIABLES = ("z", "zh", "qh", "u", "v", "t", "s", "tc", "sc")
_SLOTS = tuple(VARIABLES.index(n) for n in ("Z", "ZH", "QH", "U", "V", "TD", "CD", "TU", "CU"))
_QH = JSON_VARIABLES.index("qh")


def _frac(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def half(n: int) -> str:
    """Doubled quantity rendered as an exact half-integer string."""
    return str(Fraction(n, 2))


def poly_to_json(p: Poly) -> Dict[str, Any]:
    terms = []
    for exps, c in p.terms():
        extra = [i for i, e in enumerate(exps) if e and i not in _SLOTS]
        if extra:
            raise ValueError(f"variable {VARIABLES[extra[0]]} has no JSON slot")
        e = [exps[i] for i in _SLOTS]
        terms.append({"coeff": _frac(c), "exp": e, "q": half(e[_QH])})
    terms.sort(key=lambda t: (sum(t["exp"]), t["exp"]))
    return {"variables": list(JSON_VARIABLES), "terms": terms}


def poly_from_json(doc: Dict[str, Any]) -> Poly:
    if list(doc.get("variables", [])) != list(JSON_VARIABLES):
        raise ValueError("unexpected variable list")
    items = []
    laurent = False
    for t in doc["terms"]:
        e = [0] * len(VARIABLES)
        for slot, x in zip(_SLOTS, t["exp"]):
            e[slot] = int(x)
        laurent = laurent or any(x < 0 for x in e)
        items.append((e, Fraction(t["coeff"])))
    return Poly.from_terms(items, laurent=laurent)


def series_to_json(s: Series) -> List[Dict[str, Any]]:
    return [poly_to_json(c) for c in s]


def series_from_json(doc: List[Dict[str, Any]]) -> Series:
    return Series([poly_from_json(d) for d in doc], check=False)


def dumps(doc: Any) -> str:
    """Deterministic rendering: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
