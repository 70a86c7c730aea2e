"""Graph families with certified proper mixed-thin witnesses."""
from __future__ import annotations

import functools
import itertools
from collections import deque
from typing import Callable, Iterable, Sequence

from .errors import InvalidParameters, NotATree
from .graph import Graph
from .witness import PROPER_INVERSION_FREE, MixedThinWitness

CARTESIAN = "cartesian"
STRONG = "strong"


def _orders_from_predicate(part: Sequence[int], k: int, before: Callable[[int, int, int, int], bool]):
    """Sort ``V_i | V_j`` with a strict "comes before" predicate given per pair."""
    members = {i: [v for v, p in enumerate(part) if p == i] for i in range(1, k + 1)}
    orders = {}
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            pool = sorted(set(members[i]) | set(members[j]))

            def cmp(x, y, i=i, j=j):
                if x == y:
                    return 0
                return -1 if before(i, j, x, y) else 1

            orders[(i, j)] = sorted(pool, key=functools.cmp_to_key(cmp))
    return orders


def gen_complement_matching(t: int) -> tuple[Graph, MixedThinWitness]:
    """Complement of ``t`` disjoint edges; one part, complement edge set."""
    if t < 1:
        raise InvalidParameters("t must be at least 1")
    n = 2 * t
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if not (u % 2 == 0 and v == u + 1)]
    g = Graph.from_edges(n, edges)
    w = MixedThinWitness(1, [1] * n, {(1, 1): list(range(n))}, {(1, 1)}, PROPER_INVERSION_FREE)
    return g, w


def _residue_part(a: int) -> int:
    return a % 3 if a % 3 else 3


def gen_grid2d(m: int, n: int) -> tuple[Graph, MixedThinWitness]:
    """``m x n`` grid, rows split modulo 3; vertex ``(a, b)`` has id ``(a-1)*n + (b-1)``."""
    if m < 1 or n < 1:
        raise InvalidParameters("grid sides must be positive")
    coord = [(a, b) for a in range(1, m + 1) for b in range(1, n + 1)]
    vid = {c: idx for idx, c in enumerate(coord)}
    edges = []
    for (a, b), idx in vid.items():
        if a < m:
            edges.append((idx, vid[(a + 1, b)]))
        if b < n:
            edges.append((idx, vid[(a, b + 1)]))
    part = [_residue_part(a) for a, _ in coord]

    def before(i, j, x, y):
        (a, b), (c, d) = coord[x], coord[y]
        return a < c - 1 or (abs(a - c) <= 1 and b < d) or (a in (c - 1, c) and b == d)

    orders = _orders_from_predicate(part, 3, before)
    return Graph.from_edges(len(coord), edges), MixedThinWitness(3, part, orders, set(), PROPER_INVERSION_FREE)


def gen_tree(cover_pairs: Iterable[Sequence[int]], root: int = 0) -> tuple[Graph, MixedThinWitness]:
    """Tree split by depth modulo 3.

    Within a pair of parts, vertices are ordered by depth window and then by the
    pre-order of the breadth-first search tree (children by ascending id).
    """
    edges = [tuple(e) for e in cover_pairs]
    n = len(edges) + 1
    try:
        g = Graph.from_edges(n, edges)
    except ValueError as exc:
        raise NotATree(str(exc)) from exc
    if len(g.edges) != len(edges) or not (0 <= root < n):
        raise NotATree("duplicate edges or bad root")
    adj = g.neighbors()
    depth = {root: 0}
    children: dict[int, list[int]] = {v: [] for v in range(n)}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in sorted(adj[v]):
            if u not in depth:
                depth[u] = depth[v] + 1
                children[v].append(u)
                queue.append(u)
    if len(depth) != n:
        raise NotATree("graph is disconnected")
    rank = {}
    stack = [root]
    while stack:
        v = stack.pop()
        rank[v] = len(rank)
        stack.extend(reversed(children[v]))
    part = [_residue_part(depth[v]) for v in range(n)]

    def before(i, j, x, y):
        dx, dy = depth[x], depth[y]
        return dx < dy - 1 or (abs(dx - dy) <= 1 and rank[x] < rank[y])

    orders = _orders_from_predicate(part, 3, before)
    return g, MixedThinWitness(3, part, orders, set(), PROPER_INVERSION_FREE)


def gen_path_tree(n: int) -> tuple[Graph, MixedThinWitness]:
    return gen_tree([(v, v + 1) for v in range(n - 1)], 0)


def gen_complete_binary_tree(height: int) -> tuple[Graph, MixedThinWitness]:
    n = 2 ** (height + 1) - 1
    return gen_tree([((v - 1) // 2, v) for v in range(1, n)], 0)


def _distance(a: Sequence[int], b: Sequence[int], metric: str) -> int:
    diffs = [abs(x - y) for x, y in zip(a, b)]
    if metric == CARTESIAN:
        return sum(diffs)
    if metric == STRONG:
        return max(diffs)
    raise InvalidParameters(f"unknown metric {metric!r}")


def gen_multidim(d: int, m: int, metric: str = CARTESIAN) -> tuple[Graph, MixedThinWitness]:
    """Grid on ``{1..m}^d`` with ``3^(d-1)`` parts given by the first ``d-1`` coordinates mod 3."""
    if d < 1 or m < 1:
        raise InvalidParameters("d and m must be positive")
    if metric not in (CARTESIAN, STRONG):
        raise InvalidParameters(f"unknown metric {metric!r}")
    coord = list(itertools.product(range(1, m + 1), repeat=d))
    vid = {c: idx for idx, c in enumerate(coord)}
    edges = []
    for a in coord:
        for b in coord:
            if vid[a] < vid[b] and _distance(a, b, metric) == 1:
                edges.append((vid[a], vid[b]))
    labels = list(itertools.product((1, 2, 3), repeat=d - 1))
    label_index = {lab: idx + 1 for idx, lab in enumerate(labels)}
    part = [label_index[tuple(c % 3 + 1 for c in a[:-1])] for a in coord]

    def nearby(a, b):
        return all(abs(x - y) <= 1 for x, y in zip(a[:-1], b[:-1]))

    def before(i, j, x, y):
        a, b = coord[x], coord[y]
        if not nearby(a, b):
            for t in range(d - 1):
                if a[t] + 1 < b[t] and all(abs(a[l] - b[l]) <= 1 for l in range(t)):
                    return True
            return False
        if a[-1] != b[-1]:
            return a[-1] < b[-1]
        return a[:-1] < b[:-1]

    orders = _orders_from_predicate(part, len(labels), before)
    return Graph.from_edges(len(coord), edges), MixedThinWitness(
        len(labels), part, orders, set(), PROPER_INVERSION_FREE
    )


def lower_bound_vertex(k: int, h: int, i: int, j: int) -> int:
    """Id of ``c_i^j`` (chains numbered 1..2k+1, taken cyclically)."""
    i = (i - 1) % (2 * k + 1) + 1
    return (i - 1) * (h + 1) + j


def gen_lower_bound(k: int, h: int) -> tuple[Graph, MixedThinWitness]:
    """``2k+1`` cliques of size ``h+1`` joined by the cyclic slant-edge pattern."""
    if k < 1 or h < 4 * k - 4:
        raise InvalidParameters(f"need k >= 1 and h >= 4k-4 (got k={k}, h={h})")
    chains = 2 * k + 1
    n = chains * (h + 1)
    vx = functools.partial(lower_bound_vertex, k, h)
    edges = set()
    for i in range(1, chains + 1):
        for a, b in itertools.combinations(range(h + 1), 2):
            edges.add((vx(i, a), vx(i, b)))
    for i in range(1, chains + 1):
        for a in range(k):
            for b in range((h - a) // k):
                for j in range(max(0, (b - 1) * k + a + 1), b * k + a + 1):
                    for jj in range((b + 1) * k + a, h + 1):
                        edges.add((vx(i, j), vx(i + a + 1, jj)))
    part = [v // (h + 1) + 1 for v in range(n)]
    orders = {(i, i): [vx(i, j) for j in range(h + 1)] for i in range(1, chains + 1)}
    for i in range(1, chains + 1):
        for a in range(k):
            other = (i + a) % chains + 1
            blocks = []
            # blocks of C_other: [0, k+a-1], [k+a, 2k+a-1], ...; of C_i: [0, a], [a+1, k+a], ...
            lo_o, lo_i = 0, 0
            hi_i = a
            while lo_o <= h or lo_i <= h:
                hi_o = min(h, lo_o + k + a - 1 if lo_o == 0 else lo_o + k - 1)
                blocks.extend(vx(other, j) for j in range(lo_o, hi_o + 1))
                lo_o = max(lo_o, hi_o + 1)
                blocks.extend(vx(i, j) for j in range(lo_i, min(h, hi_i) + 1))
                lo_i = max(lo_i, min(h, hi_i) + 1)
                hi_i += k
            orders[(min(i, other), max(i, other))] = blocks
    return Graph.from_edges(n, edges), MixedThinWitness(chains, part, orders, set(), PROPER_INVERSION_FREE)
