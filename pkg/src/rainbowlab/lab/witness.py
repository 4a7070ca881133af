"""JSON witnesses: what the solvers emit and what ``rml verify`` checks."""

from __future__ import annotations

import json

from rainbowlab.core import InputError, format_edge, parse_edge
from rainbowlab.fractional import jsonio
from rainbowlab.verify import (
    check_fractional_cover,
    check_fractional_matching,
    check_matching,
    check_rainbow,
)

KINDS = ("matching", "rainbow", "fractional_matching", "fractional_cover")


def matching_dict(edges, perfect: bool = False) -> dict:
    return {"kind": "matching", "perfect": perfect, "edges": [format_edge(e) for e in edges]}


def rainbow_dict(picks, perfect: bool = False) -> dict:
    return {"kind": "rainbow", "perfect": perfect,
            "picks": [[int(c), format_edge(e)] for c, e in picks]}


def dumps(d: dict) -> str:
    return json.dumps(d, indent=2, sort_keys=True) + "\n"


def check_witness(d: dict, instance) -> list[str]:
    """Violations of ``d`` against a hypergraph (or a family for rainbow witnesses)."""
    kind = d.get("kind")
    try:
        if kind == "matching":
            return check_matching(instance, [parse_edge(s) for s in d["edges"]],
                                  perfect=bool(d.get("perfect")))
        if kind == "rainbow":
            family = instance if isinstance(instance, list) else None
            if family is None:
                raise InputError("rainbow witnesses are checked against a family directory")
            picks = [(int(c), parse_edge(s)) for c, s in d["picks"]]
            return check_rainbow(family, picks, perfect=bool(d.get("perfect")))
        if kind == "fractional_matching":
            f = jsonio.assignment_from_dict(d)
            return check_fractional_matching(instance, f.weights, perfect=bool(d.get("perfect")))
        if kind == "fractional_cover":
            return check_fractional_cover(instance, jsonio.cover_from_dict(d).weights)
    except (KeyError, TypeError, ValueError) as exc:
        return [f"malformed witness: {exc}"]
    return [f"unknown witness kind {kind!r}; expected one of {', '.join(KINDS)}"]
