"""Seeded random instances for tests: graphs, cographs and bounded-width posets."""
from __future__ import annotations

import itertools
import os
import random

from .graph import Graph
from .poset import MarkedPoset, transitive_closure

SEED_VARIABLE = "MIXTHIN_SEED"


def seeded_rng(default: int = 20240101) -> random.Random:
    return random.Random(int(os.environ.get(SEED_VARIABLE, default)))


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_cograph(rng: random.Random, n: int) -> Graph:
    """Built bottom-up from a random cotree: repeatedly join or disjointly unite two pieces."""
    pieces = [(frozenset([v]), frozenset()) for v in range(n)]
    while len(pieces) > 1:
        a, b = (pieces.pop(rng.randrange(len(pieces))) for _ in range(2))
        edges = a[1] | b[1]
        if rng.random() < 0.5:
            edges |= {(min(x, y), max(x, y)) for x in a[0] for y in b[0]}
        pieces.append((a[0] | b[0], edges))
    return Graph(n, pieces[0][1] if pieces else frozenset())


def random_poset(rng: random.Random, n: int, max_width: int, density: float = 0.15) -> MarkedPoset:
    """Union of at most ``max_width`` chains plus random relations along one linear extension."""
    chains: list[list[int]] = [[] for _ in range(max_width)]
    for v in range(n):
        chains[rng.randrange(max_width)].append(v)
    pairs = [(c[a], c[a + 1]) for c in chains for a in range(len(c) - 1)]
    pairs += [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < density]
    return transitive_closure(pairs, n)
