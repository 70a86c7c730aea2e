"""Simple graphs, {0,1,red} matrices and symmetric contraction."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidGraph, InvalidOrder, SelfContraction

ZERO, ONE, RED = 0, 1, 2

SYMMETRIC = "symmetric"
NATURAL = "natural"
MODES = (SYMMETRIC, NATURAL)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidGraph(f"negative vertex count {self.n}")
        normalized = set()
        for e in self.edges:
            u, v = tuple(e)
            if u == v:
                raise InvalidGraph(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidGraph(f"edge {u}-{v} out of range for n={self.n}")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        return cls(n, frozenset(tuple(e) for e in edges))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            a[u, v] = a[v, u] = True
        return a

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def relabel(self, mapping: Sequence[int]) -> Graph:
        """Return the isomorphic graph where vertex ``v`` becomes ``mapping[v]``."""
        return Graph.from_edges(self.n, ((mapping[u], mapping[v]) for u, v in self.edges))

    def induced(self, keep: Sequence[int]) -> Graph:
        """Induced subgraph on ``keep``, renumbered in the given order."""
        index = {v: i for i, v in enumerate(keep)}
        return Graph.from_edges(
            len(keep),
            ((index[u], index[v]) for u, v in self.edges if u in index and v in index),
        )


@dataclass(frozen=True, eq=False)
class TriMatrix:
    """Symmetric matrix over {ZERO, ONE, RED} indexed by groups of original vertices.

    ``cells[a, b]`` is the entry between groups ``groups[a]`` and ``groups[b]``.
    """

    groups: tuple
    cells: np.ndarray

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=np.int8)
        if cells.shape != (len(self.groups), len(self.groups)):
            raise ValueError("cell matrix does not match group count")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    def __len__(self) -> int:
        return len(self.groups)

    def group_ids(self) -> list[int]:
        return [min(g) for g in self.groups]

    def index_of(self, group_id: int) -> int:
        for idx, g in enumerate(self.groups):
            if min(g) == group_id:
                return idx
        raise KeyError(group_id)

    def red_counts(self, mode: str = SYMMETRIC) -> np.ndarray:
        red = self.cells == RED
        counts = red.sum(axis=1)
        if mode == NATURAL:
            counts = counts - np.diagonal(red)
        return counts

    def __eq__(self, other):
        if not isinstance(other, TriMatrix):
            return NotImplemented
        return self.groups == other.groups and np.array_equal(self.cells, other.cells)

    def to_lists(self) -> list[list[int]]:
        return self.cells.tolist()


def adjacency_trimatrix(g: Graph, order: Sequence[int]) -> TriMatrix:
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise InvalidOrder(f"order is not a permutation of 0..{g.n - 1}")
    a = g.adjacency_matrix()
    cells = a[np.ix_(order, order)].astype(np.int8)
    return TriMatrix(tuple(frozenset([v]) for v in order), cells)


def red_number(m: TriMatrix) -> int:
    if len(m) == 0:
        return 0
    return int(m.red_counts(SYMMETRIC).max())


def natural_red_number(m: TriMatrix) -> int:
    if len(m) == 0:
        return 0
    return int(m.red_counts(NATURAL).max())


def red_number_in_mode(m: TriMatrix, mode: str) -> int:
    if mode == SYMMETRIC:
        return red_number(m)
    if mode == NATURAL:
        return natural_red_number(m)
    raise ValueError(f"unknown mode {mode!r}")


def contract_symmetric(m: TriMatrix, a: int, b: int) -> TriMatrix:
    """Merge groups ``a`` and ``b`` (row merge followed by the matching column merge).

    The merged group takes the position ``min(a, b)``; the other index is removed.
    """
    size = len(m)
    if not (0 <= a < size and 0 <= b < size):
        raise IndexError(f"group index out of range: {a}, {b}")
    if a == b:
        raise SelfContraction(f"cannot contract group {a} with itself")
    keep, drop = min(a, b), max(a, b)
    c = m.cells
    row = np.where(c[keep] == c[drop], c[keep], RED).astype(np.int8)
    block = {int(c[keep, keep]), int(c[keep, drop]), int(c[drop, keep]), int(c[drop, drop])}
    row[keep] = block.pop() if len(block) == 1 else RED
    cells = np.array(c, dtype=np.int8)
    cells[keep, :] = row
    cells[:, keep] = row
    cells = np.delete(np.delete(cells, drop, axis=0), drop, axis=1)
    groups = list(m.groups)
    groups[keep] = groups[keep] | groups[drop]
    del groups[drop]
    return TriMatrix(tuple(groups), cells)


@dataclass
class ContractionTrace:
    """Ordered merges, each named by the minimum original vertex of both groups."""

    steps: list = field(default_factory=list)
    red_after_step: list = field(default_factory=list)
    max_red: int = 0

    def __post_init__(self):
        self.steps = [tuple(s) for s in self.steps]
        if len(self.steps) != len(self.red_after_step):
            raise ValueError("steps and red_after_step differ in length")

    def append(self, a: int, b: int, red: int) -> None:
        self.steps.append((a, b))
        self.red_after_step.append(red)
        self.max_red = max(self.max_red, red)

    def is_complete(self, n: int) -> bool:
        return len(self.steps) == max(n - 1, 0)
