"""Encodings between inversion-free proper mixed-thin graphs and bounded-width posets.

Graph to poset: every part becomes a chain, cover pairs of the pair orders
between parts ``i < j`` get an ``S`` connector, and inclusion-maximal
homogeneous intervals of each pair order get a ``B_i_j`` connector.  A
connector is a new element placed between its two joins.

Poset to graph: each element ``v`` becomes ``a_v`` and ``b_v``, and ``h`` extra
vertices encode the position of ``v`` inside its chain.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidWitness, NotAnEncoding, NotAntisymmetric
from .fo import Structure, TableEvaluator, satisfying_table
from .formulas import (
    CONNECTOR_MARK, border_mark, chain_mark, complement_mark, formula_library, part_mark,
)
from .graph import Graph
from .poset import ChainDecomposition, MarkedPoset, _bits, chain_cover, cover_pairs, transitive_closure
from .witness import PROPER_INVERSION_FREE, MixedThinWitness, verify_witness

PROCEDURAL = "procedural"
FO = "fo"
DECODE_MODES = (PROCEDURAL, FO)


@dataclass(frozen=True)
class BorderPair:
    """Endpoints, in the pair order, of a maximal homogeneous interval."""

    v: int
    w: int


@dataclass(frozen=True)
class Connector:
    centre: int
    lower: int
    upper: int
    mark: str


@dataclass
class PosetEncoding:
    poset: MarkedPoset
    connectors: list
    digraph: list  # arcs before closure


def _mode(mode: str) -> str:
    if mode in ("proc", PROCEDURAL):
        return PROCEDURAL
    if mode == FO:
        return FO
    raise ValueError(f"unknown decoding mode {mode!r}")


# ---------------------------------------------------------------- graph -> poset


def border_pairs(order: list[int], inside, homogeneous_pair) -> list[BorderPair]:
    """Maximal intervals of ``order`` on which every relevant pair is homogeneous.

    ``inside(x, y)`` says whether the pair is constrained; ``homogeneous_pair``
    whether it satisfies the constraint.  Homogeneity is inherited by
    subintervals, so the maximal ones are ``[a, reach(a)]`` where reach grows.
    """
    n = len(order)
    out = []
    end = -1
    prev_reach = -1
    for a in range(n):
        end = max(end, a)
        while end + 1 < n and all(
            homogeneous_pair(x, order[end + 1]) for x in order[a:end + 1] if inside(x, order[end + 1])
        ):
            end += 1
        if end > prev_reach:
            if end > a:
                out.append(BorderPair(order[a], order[end]))
            prev_reach = end
    return out


def _connectors(g: Graph, w: MixedThinWitness) -> list[tuple[str, int, int, int, int, int]]:
    """Connector specs ``(mark, kind, i, j, lower, upper)`` in id-allocation order."""
    adj = g.neighbors()
    pos_in_part = {}
    for i in range(1, w.k + 1):
        for idx, v in enumerate(w.orders[(i, i)]):
            pos_in_part[v] = idx
    specs = []
    for i, j in w.pairs():
        if i < j:
            order = w.orders[(i, j)]
            for x, y in zip(order, order[1:]):
                if w.part[x] == i and w.part[y] == j:
                    specs.append((CONNECTOR_MARK, 0, i, j, x, y))
    for i, j in w.pairs():
        order = w.orders[(i, j)]
        comp = w.uses_complement(i, j)

        def inside(x, y, i=i, j=j):
            return x != y and {w.part[x], w.part[y]} == {i, j}

        def hom(x, y, comp=comp):
            return (y in adj[x]) != comp

        for bp in border_pairs(order, inside, hom):
            lower, upper = bp.v, bp.w
            if w.part[lower] == j and w.part[upper] == i and i != j:
                lower, upper = upper, lower
            specs.append((border_mark(i, j), 1, i, j, lower, upper))
    specs.sort(key=lambda s: (s[1], s[2], s[3], pos_in_part[s[4]], pos_in_part[s[5]]))
    return specs


def encode_graph_to_poset_detailed(g: Graph, w: MixedThinWitness) -> PosetEncoding:
    strict = w.with_variant(PROPER_INVERSION_FREE)
    report = verify_witness(g, strict)
    if not report.accepted:
        raise InvalidWitness(f"witness is not inversion-free proper: {report.violations[:3]}")
    k, n = w.k, g.n
    arcs = []
    for i in range(1, k + 1):
        chain = w.orders[(i, i)]
        arcs.extend(zip(chain, chain[1:]))
    connectors = []
    for idx, (mark, _, _, _, lower, upper) in enumerate(_connectors(g, w)):
        c = Connector(n + idx, lower, upper, mark)
        connectors.append(c)
        arcs.extend([(lower, c.centre), (c.centre, upper)])
    groups: dict[tuple, list[Connector]] = {}
    for c in connectors:
        groups.setdefault((c.mark, w.part[c.lower], w.part[c.upper]), []).append(c)
    pos = {v: idx for i in range(1, k + 1) for idx, v in enumerate(w.orders[(i, i)])}
    for members in groups.values():
        for x, y in itertools.permutations(members, 2):
            if pos[x.lower] < pos[y.lower] and pos[x.upper] < pos[y.upper]:
                arcs.append((x.centre, y.centre))
    marks: dict[str, set] = {part_mark(i): set(w.orders[(i, i)]) for i in range(1, k + 1)}
    marks[CONNECTOR_MARK] = set()
    for i, j in w.pairs():
        marks[border_mark(i, j)] = set()
        marks[complement_mark(i, j)] = {0} if w.uses_complement(i, j) and n > 0 else set()
    for c in connectors:
        marks[c.mark].add(c.centre)
    try:
        poset = transitive_closure(arcs, n + len(connectors), marks)
    except NotAntisymmetric as exc:  # pragma: no cover - excluded by the witness conditions
        raise InvalidWitness(f"encoding digraph has a cycle: {exc}") from exc
    return PosetEncoding(poset, connectors, arcs)


def encode_graph_to_poset(g: Graph, w: MixedThinWitness) -> MarkedPoset:
    return encode_graph_to_poset_detailed(g, w).poset


def width_bound(k: int) -> int:
    return 5 * (k * (k - 1) // 2) + 5 * k


def certificate_bound(k: int) -> int:
    return k + 5 * (k * (k - 1) // 2) + 4 * k


# ---------------------------------------------------------------- poset -> graph


@dataclass
class _Reading:
    """Everything the procedural decoder reads off a marked poset."""

    k: int
    part: dict                 # vertex -> part
    chains: dict               # part -> vertices in order
    connectors: list = field(default_factory=list)


def _rank_sorted(p: MarkedPoset, elems) -> list[int]:
    out = sorted(elems, key=lambda v: (-bin(p.up[v]).count("1"), v))
    for a, b in zip(out, out[1:]):
        if not p.lt(a, b):
            raise NotAnEncoding(f"elements {a} and {b} of one part are incomparable")
    return out


def _read(p: MarkedPoset, k: int) -> _Reading:
    if k < 1:
        raise NotAnEncoding("k must be positive")
    part: dict[int, int] = {}
    chains = {}
    for i in range(1, k + 1):
        members = p.mark(part_mark(i))
        for v in members:
            if v in part:
                raise NotAnEncoding(f"element {v} carries two part marks")
            part[v] = i
        chains[i] = _rank_sorted(p, members)
    if set(part) != set(range(len(part))):
        raise NotAnEncoding("graph vertices must be the elements 0..n-1")
    known = {CONNECTOR_MARK} | {border_mark(i, j) for i in range(1, k + 1) for j in range(i, k + 1)}
    covers = cover_pairs(p)
    below: dict[int, list[int]] = {}
    above: dict[int, list[int]] = {}
    for a, b in covers:
        if a in part:
            below.setdefault(b, []).append(a)
        if b in part:
            above.setdefault(a, []).append(b)
    connectors = []
    for x in range(p.n):
        if x in part:
            continue
        kinds = [name for name in known if x in p.mark(name)]
        if len(kinds) != 1:
            raise NotAnEncoding(f"element {x} is neither a vertex nor a connector with one mark")
        lo, up = below.get(x, []), above.get(x, [])
        if len(lo) != 1 or len(up) != 1:
            raise NotAnEncoding(f"connector {x} does not have exactly one join on each side")
        connectors.append(Connector(x, lo[0], up[0], kinds[0]))
    return _Reading(k, part, chains, connectors)


def _pair_order(r: _Reading, i: int, j: int) -> list[int]:
    """The order on ``V_i | V_j`` recovered from chains and ``S`` connectors."""
    if i == j:
        return list(r.chains[i])
    if i > j:
        i, j = j, i
    pos = {v: idx for idx, v in enumerate(r.chains[i])}
    pos.update({v: idx for idx, v in enumerate(r.chains[j])})
    # reach[a]: smallest position in chain j of an upper join whose lower join is at or above a
    reach = [len(r.chains[j])] * (len(r.chains[i]) + 1)
    for c in r.connectors:
        if c.mark == CONNECTOR_MARK and r.part[c.lower] == i and r.part[c.upper] == j:
            reach[pos[c.lower]] = min(reach[pos[c.lower]], pos[c.upper])
    for a in range(len(r.chains[i]) - 1, -1, -1):
        reach[a] = min(reach[a], reach[a + 1])

    def cmp(x, y):
        if r.part[x] == r.part[y]:
            return pos[x] - pos[y]
        if r.part[x] == i:
            return -1 if pos[y] >= reach[pos[x]] else 1
        return -cmp(y, x)

    return sorted(r.chains[i] + r.chains[j], key=functools.cmp_to_key(cmp))


def _decode_procedural(p: MarkedPoset, k: int) -> Graph:
    r = _read(p, k)
    n = len(r.part)
    edges = []
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            order = _pair_order(r, i, j)
            pos = {v: idx for idx, v in enumerate(order)}
            mark = border_mark(i, j)
            # furthest interval end among intervals starting at or before each position
            far = [-1] * len(order)
            for c in r.connectors:
                if c.mark != mark:
                    continue
                if c.lower not in pos or c.upper not in pos:
                    raise NotAnEncoding(f"connector {c.centre} joins parts outside {i},{j}")
                a, b = sorted((pos[c.lower], pos[c.upper]))
                far[a] = max(far[a], b)
            for idx in range(1, len(order)):
                far[idx] = max(far[idx], far[idx - 1])
            flipped = bool(p.mark(complement_mark(i, j)))
            for a in range(len(order)):
                for b in range(a + 1, len(order)):
                    x, y = order[a], order[b]
                    if {r.part[x], r.part[y]} != {i, j}:
                        continue
                    if (far[a] >= b) != flipped:
                        edges.append((x, y))
    return Graph.from_edges(n, edges)


def poset_structure(p: MarkedPoset) -> Structure:
    return Structure(p.n, {"le": p.le_matrix()}, dict(p.marks))


def _with_required_marks(p: MarkedPoset, k: int) -> MarkedPoset:
    marks = dict(p.marks)
    names = [part_mark(i) for i in range(1, k + 1)] + [CONNECTOR_MARK]
    names += [f(i, j) for i in range(1, k + 1) for j in range(i, k + 1) for f in (border_mark, complement_mark)]
    for name in names:
        marks.setdefault(name, frozenset())
    return p.with_marks(marks)


def _decode_fo(p: MarkedPoset, k: int) -> Graph:
    p = _with_required_marks(p, k)
    s = poset_structure(p)
    ev = TableEvaluator(s)
    domain = satisfying_table(s, formula_library("vertex", k=k), ("u",), ev)
    vertices = [int(v) for v in np.flatnonzero(domain)]
    if vertices != list(range(len(vertices))):
        raise NotAnEncoding("graph vertices must be the elements 0..n-1")
    table = satisfying_table(s, formula_library("edge", k=k), ("u", "v"), ev)
    n = len(vertices)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if table[u, v]]
    return Graph.from_edges(n, edges)


def decode_poset_to_graph(p: MarkedPoset, k: int, mode: str = PROCEDURAL) -> Graph:
    if _mode(mode) == FO:
        _read(p, k)  # same consistency checks in both modes
        return _decode_fo(p, k)
    return _decode_procedural(p, k)


class CertifiedChainCover(ChainDecomposition):
    """Chain cover whose ``raw_size`` counts the empty chains that were dropped."""

    def __init__(self, chains, raw_size: int):
        super().__init__(chains)
        self.raw_size = raw_size


def chain_cover_certificate(p: MarkedPoset, k: int) -> CertifiedChainCover:
    """Explicit cover: one chain per part, one per ``S`` pair, four per border mark."""
    r = _read(p, k)
    raw: list[list[int]] = [list(r.chains[i]) for i in range(1, k + 1)]
    chain_pos = {v: idx for i in r.chains for idx, v in enumerate(r.chains[i])}
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            order = _pair_order(r, i, j)
            pos = {v: idx for idx, v in enumerate(order)}
            # slots: border pairs falling in (V_i,V_i), (V_j,V_j), (V_i,V_j), (V_j,V_i); for i = j
            # only the first can be filled, but all four are counted in the raw size
            slots = {(i, i): 0, (j, j): 1, (i, j): 2, (j, i): 3} if i < j else {(i, i): 0}
            buckets: list[list[Connector]] = [[] for _ in range(5 if i < j else 4)]
            for c in r.connectors:
                parts = (r.part[c.lower], r.part[c.upper])
                if c.mark == CONNECTOR_MARK and parts == (i, j) and i < j:
                    buckets[4].append(c)
                elif c.mark == border_mark(i, j):
                    first, second = sorted((c.lower, c.upper), key=pos.__getitem__)
                    buckets[slots[(r.part[first], r.part[second])]].append(c)
            for members in buckets:
                members.sort(key=lambda c: (chain_pos[c.lower], chain_pos[c.upper]))
                raw.append([c.centre for c in members])
    cover = CertifiedChainCover([c for c in raw if c], len(raw))
    if not cover.is_valid_for(p):
        raise NotAnEncoding("marks do not yield a chain cover")
    return cover


# ---------------------------------------------------------------- poset -> graph (width k)


@dataclass
class GraphEncoding:
    graph: Graph
    marks: dict
    witness: MixedThinWitness

    def __iter__(self):
        return iter((self.graph, self.marks, self.witness))


def encode_poset_to_graph(p: MarkedPoset) -> GraphEncoding:
    """Vertices ``a_v = v``, ``b_v = n + v`` and ``o_m = 2n + m - 1``."""
    n = p.n
    chains = [list(c) for c in chain_cover(p).chains]
    k = len(chains)
    h = max((len(c) for c in chains), default=0)
    chain_of, rank = {}, {}
    for ci, c in enumerate(chains, start=1):
        c.sort(key=lambda v: (-bin(p.up[v]).count("1"), v))
        for idx, v in enumerate(c):
            chain_of[v], rank[v] = ci, idx + 1

    def a(v):
        return v

    def b(v):
        return n + v

    def o(m):
        return 2 * n + m - 1

    edges = []
    for v in range(n):
        for m in range(1, rank[v] + 1):
            edges.extend([(o(m), a(v)), (o(m), b(v))])
    for u in range(n):
        for v in range(n):
            if chain_of[u] != chain_of[v] and p.leq(u, v):
                edges.append((a(u), b(v)))
    graph = Graph.from_edges(2 * n + h, edges)

    parts_count = 2 * k + 1
    inner = {1: [o(m) for m in range(1, h + 1)]}
    for ci, c in enumerate(chains, start=1):
        inner[1 + ci] = [a(v) for v in c]
        inner[1 + k + ci] = [b(v) for v in c]
    part = [0] * graph.n
    for r, members in inner.items():
        for x in members:
            part[x] = r

    def element(x):
        return x if x < n else x - n

    orders = {}
    for r in range(1, parts_count + 1):
        for s in range(r, parts_count + 1):
            if r == s:
                orders[(r, s)] = list(inner[r])
            elif r == 1:
                other, os_ = inner[s], inner[1]
                merged = []
                for idx in range(max(len(os_), len(other))):
                    if idx < len(os_):
                        merged.append(os_[idx])
                    if idx < len(other):
                        merged.append(other[idx])
                orders[(r, s)] = merged
            elif r <= k + 1 < s and r - 1 != s - 1 - k:
                xs, ys = inner[r], inner[s]

                def cmp(x, y):
                    if part[x] == part[y]:
                        seq = inner[part[x]]
                        return seq.index(x) - seq.index(y)
                    if part[x] == r:
                        return -1 if p.leq(element(x), element(y)) else 1
                    return -cmp(y, x)

                orders[(r, s)] = sorted(xs + ys, key=functools.cmp_to_key(cmp))
            else:
                orders[(r, s)] = list(inner[r]) + list(inner[s])
    witness = MixedThinWitness(parts_count, part, orders, set(), PROPER_INVERSION_FREE)
    marks = {"A": {a(v) for v in range(n)}, "B": {b(v) for v in range(n)}, "O": set(inner[1])}
    for ci, c in enumerate(chains, start=1):
        marks[chain_mark(ci)] = {a(v) for v in c} | {b(v) for v in c}
    return GraphEncoding(graph, {name: sorted(ids) for name, ids in marks.items()}, witness)


def _graph_reading(g: Graph, marks: dict):
    required = ("A", "B", "O")
    for name in required:
        if name not in marks:
            raise NotAnEncoding(f"missing mark {name}")
    sets = {name: set(ids) for name, ids in marks.items()}
    chain_names = sorted((name for name in sets if name.startswith("C_") and name[2:].isdigit()),
                         key=lambda s: int(s[2:]))
    k = len(chain_names)
    if any(x >= g.n or x < 0 for ids in sets.values() for x in ids):
        raise NotAnEncoding("mark refers to a missing vertex")
    if sets["A"] & sets["B"] or (sets["A"] | sets["B"]) & sets["O"]:
        raise NotAnEncoding("marks A, B and O must be disjoint")
    return sets, chain_names, k


def _poset_from_relation(domain: list[int], rel) -> MarkedPoset:
    up = []
    for x in domain:
        mask = 0
        for idx, y in enumerate(domain):
            if rel(x, y):
                mask |= 1 << idx
        up.append(mask)
    try:
        return MarkedPoset(len(domain), tuple(up))
    except (ValueError, NotAntisymmetric) as exc:
        raise NotAnEncoding(f"decoded relation is not a partial order: {exc}") from exc


def decode_graph_to_poset(g: Graph, marks: dict, mode: str = PROCEDURAL) -> MarkedPoset:
    """Poset on the ``A`` vertices in increasing id order."""
    sets, chain_names, k = _graph_reading(g, marks)
    domain = sorted(sets["A"])
    if _mode(mode) == FO:
        s = Structure(g.n, {"E": g.adjacency_matrix().astype(bool)},
                      {name: ids for name, ids in sets.items()})
        for idx in range(1, k + 1):
            s.marks.setdefault(chain_mark(idx), np.zeros(g.n, dtype=bool))
        ev = TableEvaluator(s)
        table = satisfying_table(s, formula_library("poset_le", k=max(k, 1)), ("u", "v"), ev) \
            if k else np.eye(g.n, dtype=bool)
        return _poset_from_relation(domain, lambda x, y: bool(table[x, y]))
    adj = g.neighbors()
    chain_of = {}
    for idx, name in enumerate(chain_names, start=1):
        for x in sets[name]:
            if x in chain_of:
                raise NotAnEncoding(f"vertex {x} lies on two chains")
            chain_of[x] = idx
    o_nbrs = {x: frozenset(adj[x] & sets["O"]) for x in range(g.n)}
    twin_b = {}
    for x in domain:
        twins = [y for y in sets["B"] if chain_of.get(y) == chain_of.get(x) and o_nbrs[y] == o_nbrs[x]]
        twin_b[x] = twins

    def rel(x, y):
        if chain_of.get(x) is not None and chain_of.get(x) == chain_of.get(y):
            return o_nbrs[x] <= o_nbrs[y]
        # a-twins of x are x itself when the encoding is faithful; use all of them
        xs = [z for z in domain if chain_of.get(z) == chain_of.get(x) and o_nbrs[z] == o_nbrs[x]] \
            if chain_of.get(x) is not None else []
        return any(bz in adj[az] for az in xs for bz in twin_b[y])

    return _poset_from_relation(domain, rel)
