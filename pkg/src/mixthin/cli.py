"""Command-line entry point: ``mixthin <subcommand> ...``.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .engine import EngineStats, build_sequence, matrix_order, replay_sequence
from .errors import BudgetExceeded, EngineInvariantError, MixThinError
from .fo import quantifier_depth, to_sexpr
from .formulas import FORMULA_NAMES, formula_library
from .generators import (
    CARTESIAN, STRONG, gen_complement_matching, gen_complete_binary_tree, gen_grid2d,
    gen_lower_bound, gen_multidim, gen_path_tree, gen_tree,
)
from .graph import MODES, NATURAL, SYMMETRIC
from .oracle import SearchConfig, exact_twinwidth
from .paths import from_path_representation, sample_representations
from .render import graph_dot, matrix_dot, poset_dot
from .transduction import (
    decode_graph_to_poset, decode_poset_to_graph, encode_graph_to_poset, encode_poset_to_graph,
)
from .trisection import compute_trisection, submatrix
from .witness import VARIANTS, verify_witness

OK, FAILED, BAD_INPUT = 0, 1, 2


def _emit(result: dict) -> None:
    sys.stdout.write(io.dumps(result))


def _write_or_print(data: dict, out: str | None) -> None:
    if out:
        io.write_json(out, data)
    else:
        _emit(data)


def _load_pair(graph_path: str, witness_path: str):
    g = io.parse_graph(graph_path)
    return g, io.parse_witness(witness_path, g.n)


# ---------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    family = args.family
    p = args.params
    if family == "comp-matching":
        g, w = gen_complement_matching(*_ints(p, 1))
    elif family == "grid":
        g, w = gen_grid2d(*_ints(p, 2))
    elif family == "tree":
        if args.edges:
            src = io.parse_graph(args.edges)
            g, w = gen_tree(src.sorted_edges(), root=args.root)
        elif args.binary is not None:
            g, w = gen_complete_binary_tree(args.binary)
        else:
            g, w = gen_path_tree(*_ints(p, 1))
    elif family == "multidim":
        g, w = gen_multidim(*_ints(p, 2), metric=args.metric)
    elif family == "lower-bound":
        g, w = gen_lower_bound(*_ints(p, 2))
    else:
        reps = sample_representations()
        if len(p) != 1 or p[0] not in reps:
            raise MixThinError(f"paths needs one of: {', '.join(sorted(reps))}")
        g, w = from_path_representation(reps[p[0]])
    _write_or_print(io.graph_to_json(g), args.out)
    if args.witness:
        io.write_json(args.witness, io.witness_to_json(w))
    return OK


def _ints(params: list[str], count: int) -> list[int]:
    if len(params) != count:
        raise MixThinError(f"expected {count} integer parameter(s), got {len(params)}")
    try:
        return [int(x) for x in params]
    except ValueError:
        raise MixThinError(f"parameters must be integers: {params}") from None


def cmd_verify(args) -> int:
    g, w = _load_pair(args.graph, args.witness)
    if args.variant:
        w = w.with_variant(args.variant)
    report = verify_witness(g, w)
    _emit({"accepted": report.accepted, "variant": w.variant,
           "violations": [{"condition": tag, "pair": list(pair), "vertices": list(vs)}
                          for tag, pair, vs in report.violations[:20]]})
    return OK if report.accepted else FAILED


def cmd_contract(args) -> int:
    g, w = _load_pair(args.graph, args.witness)
    stats = EngineStats()
    try:
        trace = build_sequence(g, w, mode=args.mode, debug=args.debug_invariants, stats=stats)
    except EngineInvariantError as exc:
        _emit({"ok": False, "error": str(exc)})
        return FAILED
    _write_or_print(io.trace_to_json(trace), args.out)
    bound = 9 * w.k
    result = {"ok": trace.max_red <= bound, "max_red": trace.max_red, "bound": bound,
              "steps": len(trace.steps), "stats": stats.to_json()}
    if args.out:
        _emit(result)
    if args.render:
        order = matrix_order(w)
        Path(args.render).write_text(matrix_dot(submatrix(g, order, order), order, order))
    return OK if result["ok"] else FAILED


def cmd_replay(args) -> int:
    g = io.parse_graph(args.graph)
    trace = io.parse_trace(args.trace)
    reds = replay_sequence(g, list(range(g.n)), trace, args.mode)
    consistent = not trace.red_after_step or list(trace.red_after_step) == reds
    complete = trace.is_complete(g.n)
    observed = max(reds, default=0)
    ok = consistent and observed <= args.bound
    _emit({"ok": ok, "max_red": observed, "bound": args.bound, "recorded_reds_match": consistent,
           "complete": complete})
    return OK if ok else FAILED


def cmd_tww_exact(args) -> int:
    g = io.parse_graph(args.graph)
    cfg = SearchConfig(node_budget=args.budget, mode=args.mode, max_vertices=args.max_vertices)
    try:
        value = exact_twinwidth(g, cfg)
    except BudgetExceeded as exc:
        _emit({"ok": False, "error": str(exc), "upper_bound": exc.upper_bound})
        return FAILED
    _emit({"ok": True, "twin_width": value, "mode": args.mode})
    return OK


def cmd_encode_to_poset(args) -> int:
    g, w = _load_pair(args.graph, args.witness)
    p = encode_graph_to_poset(g, w)
    _write_or_print(io.poset_to_json(p), args.out)
    if args.render:
        Path(args.render).write_text(poset_dot(p))
    return OK


def cmd_decode_from_poset(args) -> int:
    p = io.parse_poset(args.poset)
    g = decode_poset_to_graph(p, args.k, args.mode)
    _write_or_print(io.graph_to_json(g), args.out)
    return OK


def cmd_encode_to_graph(args) -> int:
    p = io.parse_poset(args.poset)
    g, marks, w = encode_poset_to_graph(p)
    _write_or_print(io.graph_to_json(g), args.out)
    if args.marks:
        io.write_json(args.marks, {name: sorted(ids) for name, ids in marks.items()})
    if args.witness:
        io.write_json(args.witness, io.witness_to_json(w))
    return OK


def cmd_decode_from_graph(args) -> int:
    g = io.parse_graph(args.graph)
    marks = io.read_json(args.marks)
    if not isinstance(marks, dict):
        raise io.ParseError("expected an object of marks")
    p = decode_graph_to_poset(g, marks, args.mode)
    _write_or_print(io.poset_to_json(p), args.out)
    if args.render:
        Path(args.render).write_text(poset_dot(p))
    return OK


def cmd_formula(args) -> int:
    f = formula_library(args.name, i=args.i, j=args.j, k=args.k)
    sys.stdout.write(to_sexpr(f) + "\n")
    if args.depth:
        sys.stdout.write(f"; quantifier depth {quantifier_depth(f)}\n")
    return OK


def cmd_render(args) -> int:
    if args.kind == "graph":
        g = io.parse_graph(args.inputs[0])
        part = io.parse_witness(args.inputs[1], g.n).part if len(args.inputs) > 1 else None
        text = graph_dot(g, part)
    elif args.kind == "poset":
        text = poset_dot(io.parse_poset(args.inputs[0]))
    else:
        if len(args.inputs) != 2 or args.pair is None:
            raise MixThinError("render trisection needs graph.json witness.json --pair I J")
        g, w = _load_pair(*args.inputs)
        i, j = args.pair
        if not (1 <= i <= w.k and 1 <= j <= w.k):
            raise MixThinError(f"pair {i},{j} outside 1..{w.k}")
        rows, cols = list(w.orders[(i, i)]), list(w.orders[(j, j)])
        text = matrix_dot(submatrix(g, rows, cols), rows, cols, compute_trisection(g, w, i, j))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixthin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph with a witness")
    p.add_argument("family", choices=["comp-matching", "grid", "tree", "multidim", "lower-bound", "paths"])
    p.add_argument("params", nargs="*", help="family parameters (see README)")
    p.add_argument("--metric", choices=[CARTESIAN, STRONG], default=CARTESIAN)
    p.add_argument("--binary", type=int, help="tree: complete binary tree of this height")
    p.add_argument("--edges", help="tree: graph JSON holding the tree")
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--witness")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a witness against a graph")
    p.add_argument("graph")
    p.add_argument("witness")
    p.add_argument("--variant", choices=VARIANTS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("contract", help="build a contraction sequence from a witness")
    p.add_argument("graph")
    p.add_argument("witness")
    p.add_argument("--out")
    p.add_argument("--mode", choices=MODES, default=SYMMETRIC)
    p.add_argument("--debug-invariants", action="store_true")
    p.add_argument("--render", help="write the adjacency matrix as DOT here")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("replay", help="recompute the red numbers of a trace")
    p.add_argument("graph")
    p.add_argument("trace")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default=SYMMETRIC)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("tww-exact", help="exact twin-width of a small graph")
    p.add_argument("graph")
    p.add_argument("--mode", choices=MODES, default=NATURAL)
    p.add_argument("--budget", type=int, default=SearchConfig.node_budget)
    p.add_argument("--max-vertices", type=int, default=SearchConfig.max_vertices)
    p.set_defaults(func=cmd_tww_exact)

    p = sub.add_parser("encode-to-poset", help="graph with witness to a marked poset")
    p.add_argument("graph")
    p.add_argument("witness")
    p.add_argument("--out")
    p.add_argument("--render", help="write the Hasse diagram as DOT here")
    p.set_defaults(func=cmd_encode_to_poset)

    p = sub.add_parser("decode-from-poset", help="marked poset back to a graph")
    p.add_argument("poset")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=["fo", "proc", "procedural"], default="proc")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode_from_poset)

    p = sub.add_parser("encode-to-graph", help="poset to a marked graph with witness")
    p.add_argument("poset")
    p.add_argument("--out")
    p.add_argument("--marks")
    p.add_argument("--witness")
    p.set_defaults(func=cmd_encode_to_graph)

    p = sub.add_parser("decode-from-graph", help="marked graph back to a poset")
    p.add_argument("graph")
    p.add_argument("marks")
    p.add_argument("--mode", choices=["fo", "proc", "procedural"], default="proc")
    p.add_argument("--out")
    p.add_argument("--render", help="write the Hasse diagram as DOT here")
    p.set_defaults(func=cmd_decode_from_graph)

    p = sub.add_parser("formula", help="print a library formula as an S-expression")
    p.add_argument("name", choices=FORMULA_NAMES)
    p.add_argument("--k", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--depth", action="store_true", help="also print the quantifier depth")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("render", help="DOT output for a graph, poset or trisected submatrix")
    p.add_argument("kind", choices=["graph", "poset", "trisection"])
    p.add_argument("inputs", nargs="+")
    p.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except (MixThinError, ValueError, KeyError, OSError) as exc:
        _emit({"ok": False, "error": f"{type(exc).__name__}: {exc}"})
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
