"""Diagonal trisections of the part-pair submatrices of an adjacency matrix.

Boundaries are stored in a *normalised frame*: rows and columns are flipped so
the pair order restricts to the part orders, and 0/1 are swapped when the pair
uses the complement edge set.  In that frame both boundaries run from the
top-left to the bottom-right corner, the outer parts hold 0 and the middle holds 1.

A boundary is an array ``x`` of length ``p + 1``: ``x[r]`` (``r < p``) is the
number of cells of row ``r`` left of the boundary and ``x[p] = q``.  The
horizontal piece on grid line ``l`` spans ``[x[l-1], x[l]]`` with ``x[-1] = 0``.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass

import numpy as np

from .errors import InvalidWitness, ShapeError
from .graph import ONE, RED, ZERO, Graph
from .witness import PROPER, REVERSED, MixedThinWitness, alignment, is_proper, verify_witness

MAIN = "main"
ANTI = "anti"


@dataclass
class Trisection:
    rows: int
    cols: int
    lower: list
    upper: list
    orientation: str = MAIN
    rows_reversed: bool = False
    cols_reversed: bool = False
    complemented: bool = False

    def __post_init__(self):
        self.lower = [int(x) for x in self.lower]
        self.upper = [int(x) for x in self.upper]

    def check_shape(self) -> None:
        p, q = self.rows, self.cols
        for arr in (self.lower, self.upper):
            if len(arr) != p + 1 or arr[-1] != q:
                raise ShapeError("boundary array does not match the submatrix")
            if any(a > b for a, b in zip(arr, arr[1:])) or (arr and arr[0] < 0):
                raise ShapeError("boundary is not monotone")
        if any(lo > up for lo, up in zip(self.lower, self.upper)):
            raise ShapeError("boundaries cross")

    def region(self, r: int, c: int) -> int:
        """0 for the lower-left part, 1 for the middle, 2 for the upper-right part."""
        if c < self.lower[r]:
            return 0
        if c < self.upper[r]:
            return 1
        return 2

    def next_to_boundary(self, r: int, c: int) -> bool:
        for arr in (self.lower, self.upper):
            start = arr[r - 1] if r > 0 else 0
            if c + 1 >= start and c <= arr[r + 1]:
                return True
        return False

    def horizontal(self, r: int) -> int:
        """Horizontal length of both boundaries on the grid line below normalised row ``r``."""
        return (self.lower[r + 1] - self.lower[r]) + (self.upper[r + 1] - self.upper[r])

    def to_matrix_frame(self, values: np.ndarray) -> np.ndarray:
        out = values
        if self.rows_reversed:
            out = out[::-1, :]
        if self.cols_reversed:
            out = out[:, ::-1]
        return out

    def normalise(self, values: np.ndarray) -> np.ndarray:
        """Map a submatrix given in matrix order into the normalised frame."""
        out = self.to_matrix_frame(np.asarray(values))
        if self.complemented:
            out = np.where(out == RED, RED, np.where(out == ONE, ZERO, ONE))
        return out

    def normalise_cell(self, r: int, c: int) -> tuple[int, int]:
        return (self.rows - 1 - r if self.rows_reversed else r,
                self.cols - 1 - c if self.cols_reversed else c)

    def rotated(self) -> Trisection:
        """Boundaries for the submatrix rotated by 180 degrees (all orders reversed)."""
        p, q = self.rows, self.cols
        upper = [q - self.lower[p - 1 - r] for r in range(p)] + [q]
        lower = [q - self.upper[p - 1 - r] for r in range(p)] + [q]
        return Trisection(p, q, lower, upper, self.orientation,
                          self.rows_reversed, self.cols_reversed, self.complemented)

    def to_json(self) -> dict:
        return {"lower": list(self.lower), "upper": list(self.upper), "orientation": self.orientation}

    def delete_row(self, r: int) -> None:
        """Merge normalised rows ``r`` and ``r + 1`` so both old middles stay in the middle."""
        del self.lower[r + 1]
        del self.upper[r]
        self.rows -= 1

    def delete_col(self, c: int) -> None:
        """Merge normalised columns ``c`` and ``c + 1``; the merged column joins the middle."""
        def shift(x, crossing):
            if x <= c:
                return x
            if x == c + 1:
                return crossing
            return x - 1

        self.lower = [shift(x, c) for x in self.lower]
        self.upper = [shift(x, c + 1) for x in self.upper]
        self.cols -= 1


@dataclass
class PairFrame:
    """Vertices of rows and columns of ``A_{i,j}`` together with the normalisation flags."""

    row_vertices: list
    col_vertices: list
    rows_reversed: bool
    cols_reversed: bool
    complemented: bool
    split: list  # per normalised row, how many normalised columns precede it in the pair order


def pair_frame(w: MixedThinWitness, i: int, j: int) -> PairFrame:
    rows = list(w.orders[(i, i)])
    cols = list(w.orders[(j, j)])
    pair_order = w.order(i, j)
    rows_set, cols_set = set(rows), set(cols)
    rows_reversed = len(rows) > 1 and alignment([v for v in pair_order if v in rows_set], rows) == REVERSED
    cols_reversed = len(cols) > 1 and alignment([v for v in pair_order if v in cols_set], cols) == REVERSED
    pos = {v: idx for idx, v in enumerate(pair_order)}
    norm_rows = rows[::-1] if rows_reversed else rows
    norm_cols = cols[::-1] if cols_reversed else cols
    col_pos = [pos[v] for v in norm_cols]
    split = [bisect.bisect_left(col_pos, pos[u]) for u in norm_rows]
    return PairFrame(rows, cols, rows_reversed, cols_reversed, w.uses_complement(i, j), split)


def submatrix(g: Graph, rows: list[int], cols: list[int]) -> np.ndarray:
    a = g.adjacency_matrix()
    return a[np.ix_(rows, cols)].astype(np.int8) if rows and cols else np.zeros((len(rows), len(cols)), np.int8)


def diagonal_cells(rows: list[int], cols: list[int]) -> set[tuple[int, int]]:
    col_index = {v: c for c, v in enumerate(cols)}
    return {(r, col_index[v]) for r, v in enumerate(rows) if v in col_index}


def compute_trisection(g: Graph, w: MixedThinWitness, i: int, j: int, *, checked: bool = True) -> Trisection:
    if checked:
        report = verify_witness(g, w if is_proper(w.variant) else w.with_variant(PROPER))
        if not report.accepted:
            raise InvalidWitness(f"witness rejected: {report.violations[:3]}")
    frame = pair_frame(w, i, j)
    t = Trisection(len(frame.row_vertices), len(frame.col_vertices), [], [],
                   MAIN if frame.rows_reversed == frame.cols_reversed else ANTI,
                   frame.rows_reversed, frame.cols_reversed, frame.complemented)
    values = t.normalise(submatrix(g, frame.row_vertices, frame.col_vertices))
    diag = {t.normalise_cell(r, c) for r, c in diagonal_cells(frame.row_vertices, frame.col_vertices)}
    p, q = t.rows, t.cols
    lower, upper = [], []
    running = 0
    for r in range(p):
        s = frame.split[r]
        left_ones = [c for c in range(s) if values[r, c] == ONE and (r, c) not in diag]
        right_ones = [c for c in range(s, q) if values[r, c] == ONE and (r, c) not in diag]
        lower.append(left_ones[0] if left_ones else s)
        # diagonal cells may force a step back; the running maximum keeps the staircase monotone
        running = max(running, right_ones[-1] + 1 if right_ones else s)
        upper.append(running)
    t.lower = lower + [q]
    t.upper = upper + [q]
    return t


def _parts_ok(values: np.ndarray, t: Trisection, diag: set, allow_red: bool) -> bool:
    seen: dict[int, int] = {}
    for r in range(t.rows):
        for c in range(t.cols):
            if (r, c) in diag:
                continue
            v = int(values[r, c])
            part = t.region(r, c)
            if v == RED:
                if not allow_red or part != 1 or not t.next_to_boundary(r, c):
                    return False
                continue
            if seen.setdefault(part, v) != v:
                return False
    return True


def verify_trisection(m, t: Trisection, diagonal: set | None = None, *, allow_red: bool = False) -> bool:
    """True iff every part of ``m`` (given in matrix order) is constant off ``diagonal``.

    With ``allow_red`` the red-aligned form is checked instead: each part is constant
    apart from red cells, which must lie in the middle part next to a boundary.
    """
    values = np.asarray(getattr(m, "cells", m))
    if values.ndim != 2 or values.shape != (t.rows, t.cols):
        raise ShapeError(f"submatrix shape {values.shape} does not match trisection {t.rows}x{t.cols}")
    t.check_shape()
    normalised = t.normalise(values)
    diag = {t.normalise_cell(r, c) for r, c in (diagonal or set())}
    return _parts_ok(normalised, t, diag, allow_red)


def all_trisections(g: Graph, w: MixedThinWitness) -> dict[tuple[int, int], Trisection]:
    return {(i, j): compute_trisection(g, w, i, j, checked=False)
            for i in range(1, w.k + 1) for j in range(1, w.k + 1)}
