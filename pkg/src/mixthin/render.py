"""Deterministic Graphviz DOT text for graphs, Hasse diagrams and trisected matrices."""
from __future__ import annotations

from typing import Mapping

import numpy as np

from .graph import ONE, RED, Graph
from .poset import MarkedPoset, cover_pairs
from .trisection import Trisection

_PALETTE = ("lightblue", "palegreen", "khaki", "lightpink", "plum", "lightsalmon",
            "lightcyan", "wheat", "thistle", "honeydew")


def _colour(idx: int) -> str:
    return _PALETTE[idx % len(_PALETTE)]


def graph_dot(g: Graph, part: list[int] | None = None, name: str = "G") -> str:
    lines = [f"graph {name} {{", "  node [shape=circle, style=filled, fillcolor=white];"]
    for v in range(g.n):
        attrs = f' [fillcolor="{_colour(part[v] - 1)}"]' if part else ""
        lines.append(f"  {v}{attrs};")
    for u, v in g.sorted_edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_dot(p: MarkedPoset, name: str = "P") -> str:
    """Hasse diagram drawn bottom-up; each element is labelled with its marks."""
    marks_of: dict[int, list[str]] = {v: [] for v in range(p.n)}
    for mark, ids in sorted(p.marks.items()):
        for v in ids:
            marks_of[v].append(mark)
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for v in range(p.n):
        label = f"{v}" + (f"\\n{','.join(marks_of[v])}" if marks_of[v] else "")
        lines.append(f'  {v} [label="{label}"];')
    for u, v in sorted(cover_pairs(p)):
        lines.append(f"  {u} -> {v} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def matrix_dot(cells: np.ndarray, row_labels: list[int], col_labels: list[int],
               trisection: Trisection | None = None, name: str = "M") -> str:
    """Matrix as an HTML-like table; cells in the middle part of the trisection are shaded."""
    cells = np.asarray(cells)
    symbol = {0: "0", ONE: "1", RED: "r"}
    rows = ["<TR><TD></TD>" + "".join(f"<TD><B>{c}</B></TD>" for c in col_labels) + "</TR>"]
    for r in range(cells.shape[0]):
        tds = [f"<TD><B>{row_labels[r]}</B></TD>"]
        for c in range(cells.shape[1]):
            colour = "white"
            if trisection is not None:
                nr, nc = trisection.normalise_cell(r, c)
                colour = ("lightgrey", "lightyellow", "lightgrey")[trisection.region(nr, nc)]
            if int(cells[r, c]) == RED:
                colour = "salmon"
            tds.append(f'<TD BGCOLOR="{colour}">{symbol[int(cells[r, c])]}</TD>')
        rows.append("<TR>" + "".join(tds) + "</TR>")
    table = '<TABLE BORDER="0" CELLBORDER="1" CELLSPACING="0">' + "".join(rows) + "</TABLE>"
    return f"digraph {name} {{\n  node [shape=plaintext];\n  m [label=<{table}>];\n}}\n"


def render_dot(obj, **kwargs) -> str:
    if isinstance(obj, Graph):
        return graph_dot(obj, **kwargs)
    if isinstance(obj, MarkedPoset):
        return poset_dot(obj, **kwargs)
    if isinstance(obj, Mapping) and "cells" in obj:
        return matrix_dot(obj["cells"], obj["rows"], obj["cols"], obj.get("trisection"))
    raise TypeError(f"cannot render {type(obj).__name__}")
