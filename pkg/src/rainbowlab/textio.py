"""Line-based text format for hypergraphs and families.

Grammar (UTF-8)::

    file    := line*
    line    := comment | blank | header | edge
    comment := '#' any*            (also allowed after content on any line)
    header  := k l n_1 ... n_k     (first non-comment line, integers)
    edge    := c:p ( c:p )*        (l tokens, 1-based class and position)

Edge lines may appear in any order and are deduplicated.  ``dumps`` writes
edges in canonical sorted order, so equal hypergraphs serialize to identical
bytes.  A family is a directory of such files, ordered by file name.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable

from rainbowlab.core import InputError, KPartiteHypergraph, format_edge, parse_edge


def loads(text: str) -> KPartiteHypergraph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            try:
                nums = [int(t) for t in line.split()]
            except ValueError:
                raise InputError(f"line {lineno}: header must be integers 'k l n1 .. nk'")
            if len(nums) < 3 or len(nums) != nums[0] + 2:
                raise InputError(f"line {lineno}: header needs k, l and k class sizes")
            header = nums
            continue
        try:
            edges.append(parse_edge(line))
        except (InputError, ValueError) as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    if header is None:
        raise InputError("missing header line")
    k, l, *sizes = header
    return KPartiteHypergraph(sizes, edges, l)


def dumps(H: KPartiteHypergraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(" ".join(str(x) for x in (H.k, H.l, *H.class_sizes)))
    lines.extend(format_edge(e) for e in H.sorted_edges())
    return "\n".join(lines) + "\n"


def load(path: str | os.PathLike) -> KPartiteHypergraph:
    return loads(Path(path).read_text(encoding="utf-8"))


def dump(H: KPartiteHypergraph, path: str | os.PathLike, comment: str | None = None) -> None:
    Path(path).write_text(dumps(H, comment), encoding="utf-8")


def load_family(directory: str | os.PathLike) -> list[KPartiteHypergraph]:
    d = Path(directory)
    if not d.is_dir():
        raise InputError(f"{d} is not a directory")
    files = sorted(p for p in d.iterdir() if p.is_file() and not p.name.startswith("."))
    if not files:
        raise InputError(f"family directory {d} is empty")
    return [load(p) for p in files]


def dump_family(family: Iterable[KPartiteHypergraph], directory: str | os.PathLike) -> list[Path]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    family = list(family)
    width = max(2, len(str(len(family))))
    paths = []
    for i, F in enumerate(family, start=1):
        p = d / f"F{i:0{width}d}.txt"
        dump(F, p, comment=f"color {i}")
        paths.append(p)
    return paths
