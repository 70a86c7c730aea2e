"""JSON files for graphs, witnesses, posets and traces.

Schema problems raise ``ParseError`` carrying a JSON pointer; well-formed
values that break a type invariant raise ``ValidationError``.  Output is
deterministic: sorted keys, sorted edge and mark lists, fixed separators.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import InvalidWitness, NotAntisymmetric, ParseError, ValidationError
from .graph import ContractionTrace, Graph
from .poset import MarkedPoset, cover_pairs, transitive_closure
from .witness import VARIANTS, MixedThinWitness


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def write_json(path: str | Path, data: Any) -> None:
    Path(path).write_text(dumps(data))


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _expect(data: Any, kind, pointer: str, what: str):
    ok = isinstance(data, kind) and not (kind is int and isinstance(data, bool))
    if not ok:
        raise ParseError(f"expected {what}", pointer)
    return data


def _field(obj: dict, key: str, kind, what: str, pointer: str = ""):
    if key not in obj:
        raise ParseError(f"missing key {key!r}", pointer or "/")
    return _expect(obj[key], kind, f"{pointer}/{key}", what)


def _int_pairs(data: Any, pointer: str) -> list[tuple[int, int]]:
    out = []
    for idx, pair in enumerate(_expect(data, list, pointer, "a list of pairs")):
        here = f"{pointer}/{idx}"
        _expect(pair, list, here, "a pair of integers")
        if len(pair) != 2:
            raise ParseError("expected a pair of integers", here)
        out.append((_expect(pair[0], int, f"{here}/0", "an integer"),
                    _expect(pair[1], int, f"{here}/1", "an integer")))
    return out


def _int_list(data: Any, pointer: str) -> list[int]:
    items = _expect(data, list, pointer, "a list of integers")
    return [_expect(x, int, f"{pointer}/{idx}", "an integer") for idx, x in enumerate(items)]


# ---------------------------------------------------------------- graph


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_json(data: Any) -> Graph:
    _expect(data, dict, "", "an object")
    n = _field(data, "n", int, "a non-negative integer")
    if n < 0:
        raise ParseError("expected a non-negative integer", "/n")
    edges = _int_pairs(_field(data, "edges", list, "a list"), "/edges")
    for idx, (u, v) in enumerate(edges):
        if u == v:
            raise ParseError(f"loop at vertex {u}", f"/edges/{idx}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1}", f"/edges/{idx}")
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------- witness


def witness_to_json(w: MixedThinWitness) -> dict:
    return {
        "k": w.k,
        "part": list(w.part),
        "orders": {f"{i},{j}": list(w.orders[(i, j)]) for i, j in sorted(w.orders)},
        "complement_pairs": [list(p) for p in sorted(w.complement_pairs)],
        "variant": w.variant,
    }


def witness_from_json(data: Any, n: int | None = None) -> MixedThinWitness:
    _expect(data, dict, "", "an object")
    k = _field(data, "k", int, "a positive integer")
    part = _int_list(_field(data, "part", list, "a list"), "/part")
    raw_orders = _field(data, "orders", dict, "an object")
    orders = {}
    for key, order in sorted(raw_orders.items()):
        pieces = key.split(",")
        if len(pieces) != 2 or not all(p.strip().isdigit() for p in pieces):
            raise ParseError(f"order key {key!r} is not of the form 'i,j'", "/orders")
        orders[(int(pieces[0]), int(pieces[1]))] = _int_list(order, f"/orders/{key}")
    comp = _int_pairs(data.get("complement_pairs", []), "/complement_pairs")
    variant = data.get("variant", "properInversionFree")
    if variant not in VARIANTS:
        raise ParseError(f"unknown variant {variant!r}", "/variant")
    w = MixedThinWitness(k, part, orders, set(comp), variant)
    for i, j in [(i, j) for i in range(1, k + 1) for j in range(i, k + 1)]:
        if (i, j) not in w.orders:
            raise ValidationError(f"missing order key \"{i},{j}\"")
    try:
        w.check_well_formed(n)
    except InvalidWitness as exc:
        raise ValidationError(str(exc)) from exc
    return w


# ---------------------------------------------------------------- poset


def poset_to_json(p: MarkedPoset) -> dict:
    return {
        "n": p.n,
        "cover_pairs": [list(c) for c in sorted(cover_pairs(p))],
        "marks": {name: sorted(ids) for name, ids in sorted(p.marks.items())},
    }


def poset_from_json(data: Any) -> MarkedPoset:
    _expect(data, dict, "", "an object")
    n = _field(data, "n", int, "a non-negative integer")
    if n < 0:
        raise ParseError("expected a non-negative integer", "/n")
    pairs = _int_pairs(_field(data, "cover_pairs", list, "a list"), "/cover_pairs")
    for idx, (u, v) in enumerate(pairs):
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"element out of range 0..{n - 1}", f"/cover_pairs/{idx}")
    marks = {}
    for name, ids in sorted(_expect(data.get("marks", {}), dict, "/marks", "an object").items()):
        members = _int_list(ids, f"/marks/{name}")
        if any(not (0 <= x < n) for x in members):
            raise ParseError("mark refers to a missing element", f"/marks/{name}")
        marks[name] = members
    try:
        return transitive_closure(pairs, n, marks)
    except NotAntisymmetric as exc:
        raise ValidationError(str(exc)) from exc


# ---------------------------------------------------------------- trace


def trace_to_json(t: ContractionTrace) -> dict:
    return {"steps": [list(s) for s in t.steps], "red_after_step": list(t.red_after_step),
            "max_red": t.max_red}


def trace_from_json(data: Any) -> ContractionTrace:
    _expect(data, dict, "", "an object")
    steps = _int_pairs(_field(data, "steps", list, "a list"), "/steps")
    reds = _int_list(data.get("red_after_step", []), "/red_after_step")
    max_red = data.get("max_red", max(reds, default=0))
    _expect(max_red, int, "/max_red", "an integer")
    if reds and len(reds) != len(steps):
        raise ValidationError("red_after_step and steps differ in length")
    if reds and max_red != max(reds):
        raise ValidationError("max_red disagrees with red_after_step")
    if reds:
        return ContractionTrace(steps, reds, max_red)
    # a bare list of merges: red numbers are recomputed on replay
    t = ContractionTrace()
    t.steps = [tuple(s) for s in steps]
    return t


def parse_graph(path) -> Graph:
    return graph_from_json(read_json(path))


def parse_witness(path, n: int | None = None) -> MixedThinWitness:
    return witness_from_json(read_json(path), n)


def parse_poset(path) -> MarkedPoset:
    return poset_from_json(read_json(path))


def parse_trace(path) -> ContractionTrace:
    return trace_from_json(read_json(path))


__all__ = [
    "dumps", "write_json", "read_json",
    "graph_to_json", "graph_from_json", "witness_to_json", "witness_from_json",
    "poset_to_json", "poset_from_json", "trace_to_json", "trace_from_json",
    "parse_graph", "parse_witness", "parse_poset", "parse_trace",
]
