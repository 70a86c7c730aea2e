from __future__ import annotations

import itertools
import random
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixthin.errors import BudgetExceeded, TooSmall
from mixthin.graph import NATURAL, SYMMETRIC, Graph
from mixthin.oracle import SearchConfig, exact_thinness_small, exact_twinwidth, min_first_contraction_red
from mixthin.randomized import random_cograph


def brute_twinwidth(g: Graph) -> int:
    """Plain minimax over partitions; red edges are mixed pairs of distinct groups."""
    adj = g.neighbors()

    def red(groups):
        deg = [0] * len(groups)
        for a, b in itertools.combinations(range(len(groups)), 2):
            kinds = {v in adj[u] for u in groups[a] for v in groups[b]}
            if len(kinds) == 2:
                deg[a] += 1
                deg[b] += 1
        return max(deg, default=0)

    @lru_cache(maxsize=None)
    def best(groups):
        if len(groups) == 1:
            return 0
        out = None
        for a, b in itertools.combinations(range(len(groups)), 2):
            merged = groups[a] | groups[b]
            rest = tuple(sorted([x for t, x in enumerate(groups) if t not in (a, b)] + [merged],
                                key=min))
            val = max(red(rest), best(rest))
            out = val if out is None else min(out, val)
        return out

    return best(tuple(frozenset([v]) for v in range(g.n))) if g.n > 1 else 0


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


@pytest.mark.parametrize("g,expected", [
    (Graph.from_edges(4, list(itertools.combinations(range(4), 2))), 0),
    (Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]), 1),
    (cycle(5), 2),
    (cycle(6), 2),
    (Graph(5), 0),
    (Graph(1), 0),
])
def test_known_values(g, expected):
    assert exact_twinwidth(g) == expected


@st.composite
def small_graphs(draw, max_n: int = 6):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    return Graph.from_edges(n, [p for p in pairs if draw(st.booleans())])


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_matches_plain_minimax(g):
    assert exact_twinwidth(g) == brute_twinwidth(g)


@settings(max_examples=40, deadline=None)
@given(small_graphs(7), st.randoms(use_true_random=False))
def test_isomorphism_invariance(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges])
    assert exact_twinwidth(g) == exact_twinwidth(h)


@settings(max_examples=40, deadline=None)
@given(small_graphs(7))
def test_symmetric_mode_within_one(g):
    nat = exact_twinwidth(g, SearchConfig(mode=NATURAL))
    sym = exact_twinwidth(g, SearchConfig(mode=SYMMETRIC))
    assert nat <= sym <= nat + 1


def test_cographs_have_twinwidth_zero():
    rng = random.Random(3)
    for _ in range(20):
        g = random_cograph(rng, rng.randint(1, 9))
        assert exact_twinwidth(g) == 0


def test_budget_and_size_limits():
    with pytest.raises(BudgetExceeded):
        exact_twinwidth(cycle(13))
    with pytest.raises(BudgetExceeded):
        exact_twinwidth(cycle(8), SearchConfig(node_budget=1))
    with pytest.raises(ValueError):
        SearchConfig(mode="other")


def test_min_first_contraction():
    assert min_first_contraction_red(Graph(3)) == 0
    assert min_first_contraction_red(cycle(5)) == 2
    with pytest.raises(TooSmall):
        min_first_contraction_red(Graph(1))


def test_small_thinness():
    assert exact_thinness_small(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]), 1)
    # C4 is not an interval graph
    assert not exact_thinness_small(cycle(4), 1)
    assert exact_thinness_small(cycle(4), 2)
    with pytest.raises(BudgetExceeded):
        exact_thinness_small(cycle(9), 2)
