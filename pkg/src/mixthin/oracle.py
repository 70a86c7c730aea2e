"""Exhaustive ground truth for tiny graphs: twin-width, first contractions, thinness."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExceeded, TooSmall
from .graph import NATURAL, SYMMETRIC, Graph, adjacency_trimatrix, contract_symmetric, natural_red_number


@dataclass(frozen=True)
class SearchConfig:
    node_budget: int = 2_000_000
    mode: str = NATURAL
    max_vertices: int = 12

    def __post_init__(self):
        if self.node_budget <= 0 or self.max_vertices <= 0:
            raise ValueError("budgets must be positive")
        if self.mode not in (NATURAL, SYMMETRIC):
            raise ValueError(f"unknown mode {self.mode!r}")


class _PartitionSearch:
    """Depth-first search over vertex partitions stored as sorted tuples of bitmasks."""

    def __init__(self, g: Graph, cfg: SearchConfig):
        self.n = g.n
        self.cfg = cfg
        self.nbr = [0] * g.n
        for u, v in g.edges:
            self.nbr[u] |= 1 << v
            self.nbr[v] |= 1 << u
        self.nodes = 0
        self._profile: dict[int, tuple[int, int, bool]] = {}

    def profile(self, group: int) -> tuple[int, int, bool]:
        """Union and intersection of neighbourhoods over the group, and inner-edge flag."""
        cached = self._profile.get(group)
        if cached is None:
            union, inter = 0, -1
            mask = group
            while mask:
                low = mask & -mask
                v = low.bit_length() - 1
                union |= self.nbr[v]
                inter &= self.nbr[v]
                mask ^= low
            cached = (union, inter, bool(union & group))
            self._profile[group] = cached
        return cached

    def red_between(self, a: int, b: int) -> bool:
        ua, ia, _ = self.profile(a)
        return not ((b & ia) == b or not (b & ua))

    def red_number(self, groups: tuple[int, ...]) -> int:
        best = 0
        for a in groups:
            count = sum(1 for b in groups if b != a and self.red_between(a, b))
            if self.cfg.mode == SYMMETRIC and self.profile(a)[2]:
                count += 1
            best = max(best, count)
        return best

    def children(self, groups: tuple[int, ...]):
        for x, y in itertools.combinations(range(len(groups)), 2):
            merged = groups[x] | groups[y]
            rest = [g for idx, g in enumerate(groups) if idx not in (x, y)]
            yield tuple(sorted(rest + [merged]))

    def greedy(self) -> int:
        state = tuple(1 << v for v in range(self.n))
        worst = self.red_number(state)
        while len(state) > 1:
            state = min(self.children(state), key=lambda s: (self.red_number(s), s))
            worst = max(worst, self.red_number(state))
        return worst

    def feasible(self, bound: int, upper: int) -> bool:
        failed: set[tuple[int, ...]] = set()
        start = tuple(1 << v for v in range(self.n))

        def dfs(state):
            if len(state) == 1:
                return True
            if state in failed:
                return False
            self.nodes += 1
            if self.nodes > self.cfg.node_budget:
                raise BudgetExceeded("node budget exhausted", upper_bound=upper)
            scored = [(self.red_number(s), s) for s in set(self.children(state))]
            for red, child in sorted(scored):
                if red > bound:
                    break
                if dfs(child):
                    return True
            failed.add(state)
            return False

        return self.red_number(start) <= bound and dfs(start)


def exact_twinwidth(g: Graph, cfg: SearchConfig | None = None) -> int:
    """Minimum over symmetric contraction sequences of the largest red number."""
    cfg = cfg or SearchConfig()
    if g.n > cfg.max_vertices:
        raise BudgetExceeded(f"{g.n} vertices exceeds the limit {cfg.max_vertices}")
    if g.n <= 1:
        return 0
    search = _PartitionSearch(g, cfg)
    upper = search.greedy()
    for bound in range(upper):
        if search.feasible(bound, upper):
            return bound
    return upper


def min_first_contraction_red(g: Graph) -> int:
    """Smallest natural red number reachable with one symmetric contraction."""
    if g.n < 2:
        raise TooSmall("need at least two vertices")
    m = adjacency_trimatrix(g, list(range(g.n)))
    return min(natural_red_number(contract_symmetric(m, a, b))
               for a, b in itertools.combinations(range(g.n), 2))


def thinness_conflicts(g: Graph, order: list[int]) -> list[set[int]]:
    """``u`` and ``v`` conflict when some later ``w`` sees ``u`` but not the later of the two."""
    adj = g.neighbors()
    pos = {v: idx for idx, v in enumerate(order)}
    conflicts = [set() for _ in range(g.n)]
    for u, v in itertools.combinations(order, 2):
        # u precedes v
        for w in order[pos[v] + 1:]:
            if w in adj[u] and w not in adj[v]:
                conflicts[u].add(v)
                conflicts[v].add(u)
                break
    return conflicts


def _colourable(conflicts: list[set[int]], k: int) -> bool:
    n = len(conflicts)
    vertices = sorted(range(n), key=lambda v: -len(conflicts[v]))
    colour = [-1] * n

    def place(idx: int, used: int) -> bool:
        if idx == n:
            return True
        v = vertices[idx]
        banned = {colour[u] for u in conflicts[v]}
        # symmetry: a fresh colour only needs trying once
        for c in range(min(used + 1, k)):
            if c not in banned:
                colour[v] = c
                if place(idx + 1, max(used, c + 1)):
                    return True
                colour[v] = -1
        return False

    return place(0, 0)


def exact_thinness_small(g: Graph, k: int, max_vertices: int = 8) -> bool:
    """Whether some global order and partition into at most ``k`` classes works."""
    if g.n > max_vertices:
        raise BudgetExceeded(f"{g.n} vertices is too many for exhaustive thinness search")
    if g.n == 0:
        return True
    if k <= 0:
        return False
    return any(_colourable(thinness_conflicts(g, list(order)), k)
               for order in itertools.permutations(range(g.n)))
