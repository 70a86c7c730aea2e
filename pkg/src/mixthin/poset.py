"""Finite posets stored as up-set bitmasks, with covers, chain covers and width."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import NotAntisymmetric


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True, eq=False)
class MarkedPoset:
    """Poset on ``0..n-1``; ``up[v]`` is the bitmask of every ``w`` with ``v <= w``.

    Marks are carried along untouched by the order algorithms.
    """

    n: int
    up: tuple
    marks: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.up) != self.n:
            raise ValueError("up-set table has wrong length")
        for v, mask in enumerate(self.up):
            if not (mask >> v) & 1:
                raise ValueError(f"relation is not reflexive at {v}")
            for w in _bits(mask):
                if w != v and (self.up[w] >> v) & 1:
                    raise NotAntisymmetric(f"{v} and {w} are mutually comparable")
                if self.up[w] & ~mask:
                    raise ValueError(f"relation is not transitive through {v} <= {w}")
        object.__setattr__(
            self, "marks", {name: frozenset(ids) for name, ids in sorted(self.marks.items())}
        )

    @classmethod
    def _trusted(cls, n: int, up: tuple, marks: Mapping[str, Iterable[int]]) -> MarkedPoset:
        # closure output is a partial order by construction; skip the quadratic check
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "up", tuple(up))
        object.__setattr__(obj, "marks", {k: frozenset(v) for k, v in sorted(marks.items())})
        return obj

    def leq(self, u: int, v: int) -> bool:
        return bool((self.up[u] >> v) & 1)

    def lt(self, u: int, v: int) -> bool:
        return u != v and self.leq(u, v)

    def comparable(self, u: int, v: int) -> bool:
        return self.leq(u, v) or self.leq(v, u)

    @property
    def le(self) -> frozenset:
        return frozenset((v, w) for v in range(self.n) for w in _bits(self.up[v]))

    def above(self, v: int) -> list[int]:
        """Elements strictly above ``v``."""
        return _bits(self.up[v] & ~(1 << v))

    def le_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for v in range(self.n):
            m[v, _bits(self.up[v])] = True
        return m

    def mark(self, name: str) -> frozenset:
        return self.marks.get(name, frozenset())

    def with_marks(self, marks: Mapping[str, Iterable[int]]) -> MarkedPoset:
        return MarkedPoset._trusted(self.n, self.up, marks)

    def same_order(self, other: MarkedPoset) -> bool:
        return self.n == other.n and tuple(self.up) == tuple(other.up)


@dataclass
class ChainDecomposition:
    chains: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.chains)

    def is_valid_for(self, p: MarkedPoset) -> bool:
        seen: set[int] = set()
        for chain in self.chains:
            for a, b in zip(chain, chain[1:]):
                if not p.lt(a, b):
                    return False
            seen.update(chain)
        total = sum(len(c) for c in self.chains)
        return total == len(seen) == p.n and seen == set(range(p.n))


def transitive_closure(
    pairs: Iterable[tuple[int, int]], n: int, marks: Mapping[str, Iterable[int]] | None = None
) -> MarkedPoset:
    """Reflexive-transitive closure of a relation; raises NotAntisymmetric on a cycle."""
    succ: list[set[int]] = [set() for _ in range(n)]
    indeg = [0] * n
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"pair ({u}, {v}) out of range")
        if u == v or v in succ[u]:
            continue
        succ[u].add(v)
        indeg[v] += 1
    queue = deque(v for v in range(n) if indeg[v] == 0)
    topo = []
    while queue:
        v = queue.popleft()
        topo.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if len(topo) != n:
        cyclic = sorted(v for v in range(n) if indeg[v] > 0)
        raise NotAntisymmetric(f"directed cycle among elements {cyclic}")
    up = [0] * n
    for v in reversed(topo):
        mask = 1 << v
        for w in succ[v]:
            mask |= up[w]
        up[v] = mask
    return MarkedPoset._trusted(n, tuple(up), marks or {})


def chain_poset(n: int) -> MarkedPoset:
    return transitive_closure([(i, i + 1) for i in range(n - 1)], n)


def cover_pairs(p: MarkedPoset) -> set[tuple[int, int]]:
    covers = set()
    for u in range(p.n):
        strict = p.up[u] & ~(1 << u)
        shadow = 0
        for z in _bits(strict):
            shadow |= p.up[z] & ~(1 << z)
        for v in _bits(strict & ~shadow):
            covers.add((u, v))
    return covers


def _hopcroft_karp(n: int, adj: list[list[int]]) -> list[int]:
    """Maximum matching left->right on ``n`` + ``n`` vertices; returns match_left."""
    INF = float("inf")
    match_l = [-1] * n
    match_r = [-1] * n
    dist = [0] * n

    def bfs() -> bool:
        q = deque()
        for u in range(n):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(root: int) -> bool:
        # iterative to stay clear of the recursion limit on long chains
        stack = [(root, iter(adj[root]))]
        path = []
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                w = match_r[v]
                if w == -1:
                    path.append((u, v))
                    for pu, pv in path:
                        match_l[pu] = pv
                        match_r[pv] = pu
                    return True
                if dist[w] == dist[u] + 1:
                    path.append((u, v))
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                dist[u] = INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in range(n):
            if match_l[u] == -1:
                dfs(u)
    return match_l


def chain_cover(p: MarkedPoset) -> ChainDecomposition:
    """Minimum chain cover from a maximum matching on strict comparabilities."""
    adj = [p.above(u) for u in range(p.n)]
    nxt = _hopcroft_karp(p.n, adj)
    has_pred = [False] * p.n
    for u, v in enumerate(nxt):
        if v != -1:
            has_pred[v] = True
    chains = []
    for start in range(p.n):
        if has_pred[start]:
            continue
        chain = [start]
        while nxt[chain[-1]] != -1:
            chain.append(nxt[chain[-1]])
        chains.append(chain)
    return ChainDecomposition(chains)


def width(p: MarkedPoset) -> int:
    return len(chain_cover(p))
