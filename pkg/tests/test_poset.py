from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixthin.errors import NotAntisymmetric
from mixthin.poset import (
    ChainDecomposition, MarkedPoset, chain_cover, chain_poset, cover_pairs, transitive_closure, width,
)


@st.composite
def dags(draw, max_n: int = 8):
    n = draw(st.integers(1, max_n))
    perm = draw(st.permutations(list(range(n))))
    pairs = [(perm[a], perm[b]) for a in range(n) for b in range(a + 1, n) if draw(st.booleans())]
    return n, pairs


def brute_width(p: MarkedPoset) -> int:
    best = 0
    for size in range(1, p.n + 1):
        for subset in itertools.combinations(range(p.n), size):
            if all(not p.comparable(a, b) for a, b in itertools.combinations(subset, 2)):
                best = size
                break
        else:
            break
    return best


def test_chain_and_antichain():
    c = chain_poset(5)
    assert width(c) == 1
    assert cover_pairs(c) == {(i, i + 1) for i in range(4)}
    a = transitive_closure([], 4)
    assert width(a) == 4 and cover_pairs(a) == set()


def test_cycle_rejected():
    with pytest.raises(NotAntisymmetric):
        transitive_closure([(0, 1), (1, 2), (2, 0)], 3)


def test_direct_construction_checks_order_axioms():
    with pytest.raises(ValueError):
        MarkedPoset(2, (0b01, 0b00))
    with pytest.raises(NotAntisymmetric):
        MarkedPoset(2, (0b11, 0b11))
    with pytest.raises(ValueError):
        MarkedPoset(3, (0b011, 0b110, 0b100))


def test_marks_are_kept():
    p = transitive_closure([(0, 1)], 3, {"S": [2], "V_1": [0, 1]})
    assert p.mark("S") == frozenset({2})
    assert p.mark("missing") == frozenset()


@settings(max_examples=120, deadline=None)
@given(dags())
def test_closure_is_transitive_and_contains_input(data):
    n, pairs = data
    p = transitive_closure(pairs, n)
    for u, v in pairs:
        assert p.leq(u, v)
    for a, b, c in itertools.product(range(n), repeat=3):
        if p.leq(a, b) and p.leq(b, c):
            assert p.leq(a, c)


@settings(max_examples=120, deadline=None)
@given(dags())
def test_covers_generate_the_same_order(data):
    n, pairs = data
    p = transitive_closure(pairs, n)
    covers = cover_pairs(p)
    assert transitive_closure(covers, n).same_order(p)
    for u, v in covers:
        assert not any(p.lt(u, z) and p.lt(z, v) for z in range(n))


@settings(max_examples=120, deadline=None)
@given(dags())
def test_chain_cover_size_matches_largest_antichain(data):
    n, pairs = data
    p = transitive_closure(pairs, n)
    cover = chain_cover(p)
    assert cover.is_valid_for(p)
    assert len(cover) == brute_width(p)


def test_invalid_chain_decomposition_detected():
    p = transitive_closure([(0, 1)], 3)
    assert not ChainDecomposition([[1, 0], [2]]).is_valid_for(p)
    assert not ChainDecomposition([[0, 1]]).is_valid_for(p)
    assert ChainDecomposition([[0, 1], [2]]).is_valid_for(p)
