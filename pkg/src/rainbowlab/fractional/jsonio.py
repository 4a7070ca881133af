"""JSON form of fractional witnesses: canonical edge strings and ``p/q`` weights."""

from __future__ import annotations

import json
from fractions import Fraction

from rainbowlab.core import InputError, Vertex, format_edge, parse_edge
from rainbowlab.fractional.lp import FractionalAssignment, FractionalCover


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {text!r}") from exc


def parse_vertex(text: str) -> Vertex:
    (v,) = parse_edge(text)
    return v


def assignment_to_dict(f: FractionalAssignment) -> dict:
    return {"kind": "fractional_matching",
            "weights": {format_edge(e): frac_str(w) for e, w in f.weights.items()}}


def cover_to_dict(w: FractionalCover) -> dict:
    return {"kind": "fractional_cover",
            "weights": {str(v): frac_str(x) for v, x in w.weights.items()}}


def assignment_from_dict(d: dict) -> FractionalAssignment:
    return FractionalAssignment({parse_edge(k): parse_frac(v) for k, v in d["weights"].items()})


def cover_from_dict(d: dict) -> FractionalCover:
    return FractionalCover({parse_vertex(k): parse_frac(v) for k, v in d["weights"].items()})


def dumps(obj) -> str:
    if isinstance(obj, FractionalAssignment):
        d = assignment_to_dict(obj)
    elif isinstance(obj, FractionalCover):
        d = cover_to_dict(obj)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(d, indent=2, sort_keys=True)


def loads(text: str):
    d = json.loads(text)
    kind = d.get("kind")
    if kind == "fractional_matching":
        return assignment_from_dict(d)
    if kind == "fractional_cover":
        return cover_from_dict(d)
    raise InputError(f"unknown witness kind {kind!r}")
