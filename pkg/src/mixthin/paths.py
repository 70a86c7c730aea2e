"""Proper intersection graphs of paths in a subdivided host graph."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InvalidPath, NotProper, WitnessConstructionError
from .graph import Graph
from .witness import PROPER, MixedThinWitness

# Numbering of the subdivided host H': host vertices keep their ids 0..h-1; then,
# for each host edge (u, v) with u < v in sorted order, its subdivision vertices
# follow consecutively, listed from u towards v.


@dataclass
class PathRepresentation:
    host: Graph
    subdivision_counts: dict = field(default_factory=dict)
    paths: dict = field(default_factory=dict)

    def __post_init__(self):
        self.subdivision_counts = {
            (min(e), max(e)): int(c) for e, c in self.subdivision_counts.items()
        }
        for e in self.host.edges:
            self.subdivision_counts.setdefault(e, 0)
        self.paths = {int(v): list(p) for v, p in self.paths.items()}

    def subdivided(self) -> SubdividedHost:
        return SubdividedHost(self.host, self.subdivision_counts)


class SubdividedHost:
    """The graph H' with a map from each vertex/edge back to its host edge."""

    def __init__(self, host: Graph, counts: dict):
        self.host = host
        self.edge_of: dict[int, tuple[int, int]] = {}
        self.position: dict[int, int] = {}
        self.lines: dict[tuple[int, int], list[int]] = {}
        nxt = host.n
        edges = []
        for e in sorted(host.edges):
            u, v = e
            inner = list(range(nxt, nxt + counts[e]))
            nxt += counts[e]
            for pos, x in enumerate(inner, start=1):
                self.edge_of[x] = e
                self.position[x] = pos
            line = [u, *inner, v]
            self.lines[e] = line
            edges.extend(zip(line, line[1:]))
        self.n = nxt
        self.graph = Graph.from_edges(nxt, edges)
        self._adj = self.graph.neighbors()

    def is_host_vertex(self, x: int) -> bool:
        return x < self.host.n

    def host_edge_of_link(self, x: int, y: int) -> tuple[int, int]:
        if x in self.edge_of:
            return self.edge_of[x]
        if y in self.edge_of:
            return self.edge_of[y]
        return (min(x, y), max(x, y))

    def check_path(self, path: list[int]) -> None:
        if not path:
            raise InvalidPath("empty path")
        if len(set(path)) != len(path):
            raise InvalidPath(f"path {path} repeats a vertex")
        for x in path:
            if not (0 <= x < self.n):
                raise InvalidPath(f"vertex {x} is not in the subdivided host")
        for x, y in zip(path, path[1:]):
            if y not in self._adj[x]:
                raise InvalidPath(f"path {path} is disconnected at {x}-{y}")
        for end in (path[0], path[-1]):
            if self.is_host_vertex(end):
                raise InvalidPath(f"path {path} ends at host vertex {end}")


@dataclass(frozen=True)
class PathClass:
    """Host-level shadow of a path: its host edges and its end-edges."""

    edges: frozenset
    end_edges: frozenset

    @property
    def canonical_end(self) -> tuple[int, int]:
        return min(self.end_edges)


def path_class(h: SubdividedHost, path: list[int]) -> PathClass:
    edges = {h.edge_of[x] for x in path if x in h.edge_of}
    edges.update(h.host_edge_of_link(x, y) for x, y in zip(path, path[1:]))
    ends = frozenset(h.edge_of[x] for x in (path[0], path[-1]))
    return PathClass(frozenset(edges), ends)


def _end_position(h: SubdividedHost, path: list[int], edge: tuple[int, int]) -> int:
    return min(h.position[x] for x in (path[0], path[-1]) if h.edge_of[x] == edge)


def _interval(indices: list[int]) -> tuple[int, int] | None:
    """``(lo, hi)`` half-open when ``indices`` is a contiguous run, else None."""
    if not indices:
        return None
    lo, hi = min(indices), max(indices) + 1
    return (lo, hi) if hi - lo == len(indices) else None


def interleave(xs: list[int], ys: list[int], adjacent) -> list[int] | None:
    """Merge two fixed sequences so that the run conditions hold between sides.

    ``p[y]`` counts the ``xs`` placed before ``y``; every ``y`` whose neighbour set
    in ``xs`` is an interval ``[lo, hi)`` needs ``lo <= p[y] <= hi``, and symmetric
    constraints from each ``x`` bound ``p`` of specific ``ys``.  A greedy pass then
    finds a nondecreasing ``p`` when one exists.
    """
    low = [0] * len(ys)
    high = [len(xs)] * len(ys)
    for b, y in enumerate(ys):
        nbrs = [a for a, x in enumerate(xs) if adjacent(x, y)]
        if nbrs:
            run = _interval(nbrs)
            if run is None:
                return None
            low[b] = max(low[b], run[0])
            high[b] = min(high[b], run[1])
    for a, x in enumerate(xs):
        nbrs = [b for b, y in enumerate(ys) if adjacent(x, y)]
        if not nbrs:
            continue
        run = _interval(nbrs)
        if run is None:
            return None
        lo, hi = run
        # exactly the ys before index lo lie before x, those from hi on lie after it
        if lo > 0:
            high[lo - 1] = min(high[lo - 1], a)
        if hi < len(ys):
            low[hi] = max(low[hi], a + 1)
    placed = []
    prev = 0
    for b in range(len(ys)):
        p = max(low[b], prev)
        if p > high[b]:
            return None
        placed.append(p)
        prev = p
    out = []
    b = 0
    for a in range(len(xs) + 1):
        while b < len(ys) and placed[b] == a:
            out.append(ys[b])
            b += 1
        if a < len(xs):
            out.append(xs[a])
    return out


def _proper_interval_ok(order: list[int], adjacent) -> bool:
    # within one part both conditions say: neighbours before w form a suffix, after w a prefix
    for pos, w in enumerate(order):
        before = [a for a in range(pos) if adjacent(order[a], w)]
        after = [a for a in range(pos + 1, len(order)) if adjacent(order[a], w)]
        if before and before[0] != pos - len(before):
            return False
        if after and after[-1] != pos + len(after):
            return False
    return True


def from_path_representation(rep: PathRepresentation) -> tuple[Graph, MixedThinWitness]:
    h = rep.subdivided()
    vertices = sorted(rep.paths)
    if vertices != list(range(len(vertices))):
        raise InvalidPath("path keys must be the vertex ids 0..n-1")
    sets = []
    for v in vertices:
        h.check_path(rep.paths[v])
        sets.append(frozenset(rep.paths[v]))
    for u, v in itertools.permutations(vertices, 2):
        if sets[u] < sets[v]:
            raise NotProper(f"path of {u} is strictly contained in the path of {v}")
    n = len(vertices)
    g = Graph.from_edges(n, ((u, v) for u, v in itertools.combinations(vertices, 2) if sets[u] & sets[v]))
    adj = g.neighbors()

    classes = [path_class(h, rep.paths[v]) for v in vertices]
    # parts numbered by the smallest vertex of each class
    distinct = list(dict.fromkeys(classes))
    index = {c: idx + 1 for idx, c in enumerate(distinct)}
    part = [index[c] for c in classes]
    k = len(distinct)
    orders: dict[tuple[int, int], list[int]] = {}
    complement_pairs: set[tuple[int, int]] = set()
    for c, i in index.items():
        members = [v for v in vertices if part[v] == i]
        members.sort(key=lambda v: (_end_position(h, rep.paths[v], c.canonical_end), v))
        if not _proper_interval_ok(members, lambda x, y: y in adj[x]):
            raise WitnessConstructionError(f"part {i} has no proper interval order along its end-edge")
        orders[(i, i)] = members
    for i, j in itertools.combinations(range(1, k + 1), 2):
        found = None
        for use_complement in (False, True):
            def adjacent(x, y, flip=use_complement):
                return (y in adj[x]) != flip

            for flip_i, flip_j in ((False, False), (False, True), (True, False), (True, True)):
                xs = orders[(i, i)][::-1] if flip_i else orders[(i, i)]
                ys = orders[(j, j)][::-1] if flip_j else orders[(j, j)]
                merged = interleave(xs, ys, adjacent)
                if merged is not None:
                    found = (merged, use_complement)
                    break
            if found:
                break
        if found is None:
            raise WitnessConstructionError(f"no order found for parts {i} and {j}")
        orders[(i, j)] = found[0]
        if found[1]:
            complement_pairs.add((i, j))
    return g, MixedThinWitness(k, part, orders, complement_pairs, PROPER)


def _host_walk(h: SubdividedHost, host_vertices: list[int]) -> list[int]:
    """H' vertices along a host walk, e.g. ``[0, 1, 2, 0]`` for a triangle."""
    out: list[int] = []
    for u, v in zip(host_vertices, host_vertices[1:]):
        line = h.lines[(min(u, v), max(u, v))]
        if u > v:
            line = line[::-1]
        out.extend(line if not out else line[1:])
    return out


def _arcs(walk: list[int], starts: list[int], length: int, cyclic: bool) -> dict[int, list[int]]:
    size = len(walk) - 1 if cyclic else len(walk)
    paths = {}
    for v, s in enumerate(starts):
        paths[v] = [walk[(s + t) % size] for t in range(length)] if cyclic else walk[s:s + length]
    return paths


def sample_representations() -> dict[str, PathRepresentation]:
    """Hand-built proper path representations used in sweeps and the CLI."""
    reps: dict[str, PathRepresentation] = {}

    def add(name, host_n, host_edges, count, make):
        host = Graph.from_edges(host_n, host_edges)
        counts = {e: count for e in host.edges}
        h = SubdividedHost(host, {tuple(sorted(e)): count for e in host_edges})
        reps[name] = PathRepresentation(host, counts, make(h))

    add("single", 2, [(0, 1)], 3, lambda h: {0: [2, 3]})
    add("k2-p3", 2, [(0, 1)], 6, lambda h: _arcs(_host_walk(h, [0, 1]), [1, 2, 3], 2, False))
    add("k2-staircase", 2, [(0, 1)], 10, lambda h: _arcs(_host_walk(h, [0, 1]), [1, 2, 3, 5, 6, 8], 3, False))
    add("c3-arcs", 3, [(0, 1), (0, 2), (1, 2)], 6,
        lambda h: _arcs(_host_walk(h, [0, 1, 2, 0]), [2, 6, 10, 13, 17], 7, True))
    add("c3-wrap", 3, [(0, 1), (0, 2), (1, 2)], 6, lambda h: {
        **_arcs(_host_walk(h, [0, 1, 2, 0]), [18, 19, 20], 19, True),
        3: _host_walk(h, [0, 1, 2, 0])[17:19],
    })
    add("c3-dense", 3, [(0, 1), (0, 2), (1, 2)], 4,
        lambda h: _arcs(_host_walk(h, [0, 1, 2, 0]), [1, 3, 6, 8, 11, 13], 6, True))
    add("p3-through", 3, [(0, 1), (1, 2)], 5,
        lambda h: _arcs(_host_walk(h, [0, 1, 2]), [1, 2, 4, 5, 7, 8], 4, False))
    add("star", 4, [(0, 1), (0, 2), (0, 3)], 4, lambda h: {
        0: _host_walk(h, [1, 0, 2])[3:8],
        1: _host_walk(h, [1, 0, 2])[4:9],
        2: _host_walk(h, [1, 0, 3])[3:8],
        3: _host_walk(h, [2, 0, 3])[2:9],
        4: _host_walk(h, [2, 0])[1:3],
    })
    add("c4-arcs", 4, [(0, 1), (1, 2), (2, 3), (0, 3)], 3,
        lambda h: _arcs(_host_walk(h, [0, 1, 2, 3, 0]), [1, 3, 5, 7, 9, 11, 14], 5, True))
    add("triangle-pendant", 4, [(0, 1), (0, 2), (1, 2), (2, 3)], 4, lambda h: {
        **_arcs(_host_walk(h, [0, 1, 2, 0]), [1, 6, 11], 6, True),
        3: _host_walk(h, [1, 2, 3])[3:9],
        4: _host_walk(h, [2, 3])[2:5],
    })
    add("k4-mixed", 4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 3, lambda h: {
        0: _host_walk(h, [0, 1, 2])[1:7],
        1: _host_walk(h, [1, 2, 3])[2:7],
        2: _host_walk(h, [2, 3, 0])[1:6],
        3: _host_walk(h, [3, 0, 1])[2:6],
        4: _host_walk(h, [0, 2])[1:4],
        5: _host_walk(h, [1, 3])[1:3],
    })
    return reps
