"""``rml``: generate instances, run the solvers and check their witnesses.

Exit codes: 0 success / valid witness, 1 invalid witness, 2 usage or input
error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from rainbowlab import textio
from rainbowlab.constructions import (
    W_AND_U_HITTING,
    W_HITTING,
    ExtremalSpec,
    H13_spec,
    balanced_d,
    build_balanced,
    build_extremal,
    build_H13,
    build_star_member,
    lift_family,
)
from rainbowlab.core import InputError, KPartiteHypergraph, ResourceError, min_l_degree, parse_edge
from rainbowlab.fractional import (
    edge_disjoint_fpm,
    matching_and_cover,
    sparse_fpm,
)
from rainbowlab.fractional import jsonio
from rainbowlab.lab import sweep as sweeps
from rainbowlab.lab import witness as W
from rainbowlab.lab.generators import random_family, random_hypergraph
from rainbowlab.pipeline import PipelineConfig, run_pipeline
from rainbowlab.solvers import (
    Matching,
    greedy_rainbow_heuristic,
    has_perfect_matching,
    max_matching,
    rainbow_matching,
    rainbow_via_lift,
)
from rainbowlab.structure import (
    edit_distance_to,
    find_absorbing,
    min_closeness,
    nibble_cover,
    sparsify,
    verify_absorbing,
)

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
GEN_KEYS = ("Hkl", "Hkl-prime", "balanced", "star", "lift", "H13", "H13-prime", "H32", "random")


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _emit(args, text: str) -> None:
    """Write to ``--out`` when given, else stdout."""
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_instance(path: str):
    p = Path(path)
    return textio.load_family(p) if p.is_dir() else textio.load(p)


def _summary(H: KPartiteHypergraph) -> str:
    d1 = min_l_degree(H, 1) if H.l > 1 else len(H.edges)
    return f"|E|={len(H.edges)} delta1={d1}"


# -- gen -----------------------------------------------------------------

def cmd_gen(args) -> int:
    key = args.key
    family = None
    if key in ("Hkl", "Hkl-prime"):
        if args.d is None or args.n is None:
            raise InputError("Hkl needs --n and --d")
        d = _ints(args.d)
        k = args.k or len(d)
        spec = ExtremalSpec(k=k, l=args.l or k, n=args.n, d=d,
                            variant=W_AND_U_HITTING if key.endswith("prime") else W_HITTING)
        H = build_extremal(spec)
    elif key == "balanced":
        if args.n is None or args.m is None:
            raise InputError("balanced needs --n and --m")
        H = build_balanced(args.n, args.m, W_AND_U_HITTING if args.prime else W_HITTING,
                           k=args.k or 3)
    elif key == "star":
        if args.n is None or args.m is None:
            raise InputError("star needs --n and --m")
        H = build_star_member(args.n, args.m, kind=args.kind)
    elif key == "lift":
        if not args.family:
            raise InputError("lift needs --family DIR")
        H = lift_family(textio.load_family(args.family))
    elif key in ("H13", "H13-prime"):
        if args.n is None:
            raise InputError(f"{key} needs --n")
        H = build_H13(args.n, prime=key.endswith("prime"))
    elif key == "H32":
        if args.n is None:
            raise InputError("H32 needs --n")
        H = build_extremal(ExtremalSpec(k=3, l=2, n=args.n, d=balanced_d(args.n, 3)))
    elif key == "random":
        if args.n is None or args.p is None:
            raise InputError("random needs --n and --p")
        k = args.k or 3
        sizes = [args.n] * k
        if args.count:
            family = random_family(args.count, sizes, args.p, seed=args.seed, l=args.l,
                                   min_degree=args.min_degree)
        else:
            H = random_hypergraph(sizes, args.p, seed=args.seed, l=args.l,
                                  min_degree=args.min_degree)
    else:  # argparse restricts the choices
        raise InputError(f"unknown generator {key!r}")
    if family is None and args.copies:
        family = [H] * args.copies
    if family is not None:
        if not args.out:
            raise InputError("families need --out DIR")
        textio.dump_family(family, args.out)
        for i, F in enumerate(family, start=1):
            print(f"F{i}: {_summary(F)}")
        return EXIT_OK
    text = textio.dumps(H, comment=f"rml gen {key}")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(_summary(H), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


# -- solve -----------------------------------------------------------------

def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    budget = args.budget_ms
    if isinstance(inst, list):
        mode = "greedy" if args.greedy else "lift" if args.lift else "exact"
        if mode == "exact":
            found = rainbow_matching(inst, target=args.target, budget_ms=budget)
        elif mode == "lift":
            found = rainbow_via_lift(inst, budget_ms=budget)
        else:
            found = greedy_rainbow_heuristic(inst)
        if found is None:
            print(f"NO rainbow matching found ({mode})", file=sys.stderr)
            _emit(args, W.dumps({"kind": "none", "solver": mode}))
            return EXIT_OK
        perfect = len(found) * inst[0].l == inst[0].n_vertices
        _emit(args, W.dumps(W.rainbow_dict(found.picks, perfect)))
        return EXIT_OK
    H = inst
    if args.target is None and not args.greedy:
        ok, m = has_perfect_matching(H, budget_ms=budget)
        if ok:
            _emit(args, W.dumps(W.matching_dict(m.edges, perfect=True)))
            return EXIT_OK
    size, m = max_matching(H, target=args.target, budget_ms=budget)
    _emit(args, W.dumps(W.matching_dict(m.edges, perfect=size * H.l == H.n_vertices)))
    return EXIT_OK


# -- lp / decompose / sparsify / cover ---------------------------------------

def cmd_lp(args) -> int:
    H = textio.load(args.instance)
    if args.fpm:
        f = sparse_fpm(H)
        if f is None:
            print("no fractional perfect matching", file=sys.stderr)
            _emit(args, W.dumps({"kind": "none"}))
            return EXIT_OK
        d = jsonio.assignment_to_dict(f)
        d["perfect"] = True
        _emit(args, W.dumps(d))
        return EXIT_OK
    f, w = matching_and_cover(H)
    print(f"nu_f = mu_f = {jsonio.frac_str(f.size)}", file=sys.stderr)
    _emit(args, W.dumps(jsonio.cover_to_dict(w) if args.cover else jsonio.assignment_to_dict(f)))
    return EXIT_OK


def cmd_decompose(args) -> int:
    H = textio.load(args.instance)
    fpms, report = edge_disjoint_fpm(H, args.t, pair_cap=Fraction(args.pair_cap))
    out = {"report": report.as_dict(),
           "fpms": [jsonio.assignment_to_dict(f) for f in fpms]}
    _emit(args, W.dumps(out))
    return EXIT_OK


def cmd_sparsify(args) -> int:
    H = textio.load(args.instance)
    fpms, report = edge_disjoint_fpm(H, args.t)
    F, _ = sparsify(H, fpms, seed=args.seed)
    deg = F.degrees()
    print(f"fpms={len(fpms)} edges={len(F.edges)} mean_degree={deg.mean():.4f} "
          f"min={deg.min()} max={deg.max()}", file=sys.stderr)
    _emit(args, textio.dumps(F, comment=f"sparsified with t={len(fpms)} seed={args.seed}"))
    return EXIT_OK


def cmd_cover(args) -> int:
    H = textio.load(args.instance)
    res = nibble_cover(H, bite=Fraction(args.bite), seed=args.seed)
    d = res.as_dict()
    d["cover"] = [" ".join(map(str, e)) for e in res.cover]
    d["matching"] = W.matching_dict(res.matching.edges)
    _emit(args, W.dumps(d))
    return EXIT_OK


# -- closeness / absorb / pipeline -------------------------------------------

def cmd_closeness(args) -> int:
    H = textio.load(args.instance)
    if args.target:
        report = edit_distance_to(H, textio.load(args.target))
    else:
        if args.d:
            d = _ints(args.d)
            spec = ExtremalSpec(k=H.k, l=H.l, n=H.n, d=d,
                                variant=W_AND_U_HITTING if args.prime else W_HITTING)
        else:
            spec = H13_spec(H.n, prime=args.prime)
        report = min_closeness(H, spec, seed=args.seed)
    _emit(args, W.dumps(report.as_dict()))
    return EXIT_OK


def cmd_absorb(args) -> int:
    H = textio.load(args.instance)
    if args.matching:
        d = json.loads(Path(args.matching).read_text())
        M = Matching(tuple(parse_edge(s) for s in d["edges"]))
        ok, S = verify_absorbing(H, M, args.b)
        _emit(args, W.dumps({"absorbing": ok, "counterexample": None if S is None
                             else [str(v) for v in S]}))
        return EXIT_OK if ok else EXIT_INVALID
    M = find_absorbing(H, args.size_cap, args.b, seed=args.seed)
    if M is None:
        print("no absorbing matching found", file=sys.stderr)
        _emit(args, W.dumps({"kind": "none"}))
        return EXIT_OK
    _emit(args, W.dumps(W.matching_dict(M.edges)))
    return EXIT_OK


def cmd_pipeline(args) -> int:
    family = textio.load_family(args.family)
    cfg = PipelineConfig(epsilon=Fraction(args.epsilon), seed=args.seed, budget_ms=args.budget_ms,
                         exact_fallback=not args.no_fallback)
    result = run_pipeline(family, cfg)
    _emit(args, result.to_json() + "\n")
    return EXIT_OK


# -- sweep / verify -----------------------------------------------------------

def cmd_sweep(args) -> int:
    rows = sweeps.run_sweep(args.kind, sweeps.parse_range(args.n), sweeps.parse_range(args.m),
                            sweeps.parse_range(args.seeds), budget_ms=args.budget_ms,
                            checkpoint=args.checkpoint, timing=args.timing)
    _emit(args, sweeps.to_csv(rows))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        d = json.loads(Path(args.witness).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        print(f"INVALID: malformed witness: {exc}")
        return EXIT_INVALID
    inst = _load_instance(args.instance)
    if args.perfect:
        d["perfect"] = True
    problems = W.check_witness(d, inst)
    if problems:
        print(f"INVALID: {problems[0]}")
        return EXIT_INVALID
    print(f"VALID {d.get('kind')}")
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def _common(defaults: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    dflt = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=dflt(0), help="random seed (default 0)")
    p.add_argument("--budget-ms", type=float, default=dflt(None), help="search budget per solve")
    p.add_argument("--out", default=dflt(None), help="output file or directory")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(False)
    parser = argparse.ArgumentParser(prog="rml", description=__doc__.splitlines()[0],
                                     parents=[_common(True)])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="write a construction or random instance")
    g.add_argument("key", choices=GEN_KEYS)
    g.add_argument("--k", type=int)
    g.add_argument("--l", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--d", help="comma separated W sizes")
    g.add_argument("--prime", action="store_true", help="W-and-U-hitting variant")
    g.add_argument("--kind", choices=("star", "triangle"), default="star")
    g.add_argument("--family", help="family directory (for lift)")
    g.add_argument("--p", type=float, help="edge probability (random)")
    g.add_argument("--min-degree", type=int, default=0)
    g.add_argument("--count", type=int, default=0, help="random family size")
    g.add_argument("--copies", type=int, default=0, help="write a family of identical copies")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", parents=[common], help="exact or heuristic matching search")
    s.add_argument("instance", help="hypergraph file or family directory")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--lift", action="store_true")
    mode.add_argument("--greedy", action="store_true")
    s.add_argument("--target", type=int)
    s.set_defaults(func=cmd_solve)

    lp = sub.add_parser("lp", parents=[common], help="fractional matching and cover")
    lp.add_argument("instance")
    lp.add_argument("--cover", action="store_true", help="emit the cover instead")
    lp.add_argument("--fpm", action="store_true", help="sparse fractional perfect matching")
    lp.set_defaults(func=cmd_lp)

    c = sub.add_parser("closeness", parents=[common], help="distance to an extremal construction")
    c.add_argument("instance")
    c.add_argument("--target", help="labeled target file")
    c.add_argument("--d", help="W sizes; default is the lifted balanced construction")
    c.add_argument("--prime", action="store_true")
    c.set_defaults(func=cmd_closeness)

    a = sub.add_parser("absorb", parents=[common], help="find or verify an absorbing matching")
    a.add_argument("instance")
    a.add_argument("--b", type=int, required=True, help="largest leftover size")
    a.add_argument("--size-cap", type=int, default=2)
    a.add_argument("--matching", help="verify this matching witness instead of searching")
    a.set_defaults(func=cmd_absorb)

    d = sub.add_parser("decompose", parents=[common], help="edge-disjoint fractional perfect matchings")
    d.add_argument("instance")
    d.add_argument("--t", type=int, required=True)
    d.add_argument("--pair-cap", default="3")
    d.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("sparsify", parents=[common], help="random sparsification")
    sp.add_argument("instance")
    sp.add_argument("--t", type=int, required=True)
    sp.set_defaults(func=cmd_sparsify)

    cv = sub.add_parser("cover", parents=[common], help="nibble edge cover")
    cv.add_argument("instance")
    cv.add_argument("--bite", default="1/10")
    cv.set_defaults(func=cmd_cover)

    pl = sub.add_parser("pipeline", parents=[common], help="staged rainbow perfect matching")
    pl.add_argument("family")
    pl.add_argument("--epsilon", default="1/10")
    pl.add_argument("--no-fallback", action="store_true", help="disable exact fallbacks")
    pl.set_defaults(func=cmd_pipeline)

    sw = sub.add_parser("sweep", parents=[common], help="CSV experiment sweep")
    sw.add_argument("kind", choices=sweeps.KINDS)
    sw.add_argument("--n", default="", help="range like 3..5 or list 3,4")
    sw.add_argument("--m", default="")
    sw.add_argument("--seeds", default="")
    sw.add_argument("--checkpoint")
    sw.add_argument("--timing", action="store_true", help="record wall-clock times")
    sw.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", parents=[common], help="check a JSON witness")
    v.add_argument("witness")
    v.add_argument("instance", help="hypergraph file or family directory")
    v.add_argument("--perfect", action="store_true")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
