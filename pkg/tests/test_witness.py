from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixthin.errors import DomainMismatch, InvalidWitness
from mixthin.graph import Graph
from mixthin.witness import (
    EQUAL, INVERSION_FREE, MIXED_THIN, NEITHER, PROPER, PROPER_INVERSION_FREE, REVERSED, VARIANTS,
    MixedThinWitness, alignment, brute_force_violations, verify_witness, weaker_variants,
)

from sweep import sweep


def c5() -> Graph:
    return Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])


def c5_witness(cross: list[int]) -> MixedThinWitness:
    return MixedThinWitness(2, [2, 1, 1, 1, 2], {(1, 1): [1, 2, 3], (2, 2): [0, 4], (1, 2): cross})


def test_c5_global_order_accepted():
    report = verify_witness(c5(), c5_witness([0, 1, 2, 3, 4]))
    assert report.accepted and report.violations == []


def test_c5_reversed_part_inside_pair_order():
    bad = c5_witness([0, 3, 2, 1, 4])
    report = verify_witness(c5(), bad)
    assert not report.accepted
    assert ("a'", (1, 2), (3, 2, 1)) in report.violations
    # without the inversion-free and proper conditions only the (b) triple remains
    loose = verify_witness(c5(), bad.with_variant(MIXED_THIN))
    assert [v[0] for v in loose.violations] == ["b"]


def test_alignment_cases():
    assert alignment([1, 2, 3], [1, 2, 3]) == EQUAL
    assert alignment([3, 2, 1], [1, 2, 3]) == REVERSED
    assert alignment([2, 1, 3], [1, 2, 3]) == NEITHER
    assert alignment([5], [5]) == EQUAL
    with pytest.raises(DomainMismatch):
        alignment([1, 2], [1, 3])


def test_weaker_variants():
    assert set(weaker_variants(PROPER_INVERSION_FREE)) == set(VARIANTS)
    assert weaker_variants(MIXED_THIN) == [MIXED_THIN]
    assert set(weaker_variants(PROPER)) == {MIXED_THIN, PROPER}
    assert set(weaker_variants(INVERSION_FREE)) == {MIXED_THIN, INVERSION_FREE}


def test_malformed_witnesses():
    g = c5()
    with pytest.raises(InvalidWitness):
        verify_witness(g, MixedThinWitness(2, [2, 1, 1, 1], {}))
    with pytest.raises(InvalidWitness):
        verify_witness(g, MixedThinWitness(2, [2, 1, 1, 1, 3], {}))
    with pytest.raises(InvalidWitness):
        verify_witness(g, MixedThinWitness(2, [2, 1, 1, 1, 2], {(1, 1): [1, 2, 3], (2, 2): [0, 4]}))
    w = c5_witness([0, 1, 2, 3, 3])
    with pytest.raises(InvalidWitness):
        verify_witness(g, w)


def _random_witness(rng: random.Random, n: int, k: int, variant: str) -> MixedThinWitness:
    """Orders are restrictions of one global order per pair, so alignment always holds."""
    part = [rng.randint(1, k) for _ in range(n)]
    base = list(range(n))
    rng.shuffle(base)
    orders = {}
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            if i == j:
                orders[(i, j)] = [v for v in base if part[v] == i]
            else:
                # interleave the two parts arbitrarily while keeping each part in base order
                a = [v for v in base if part[v] == i]
                b = [v for v in base if part[v] == j]
                merged = []
                while a or b:
                    src = a if (a and (not b or rng.random() < 0.5)) else b
                    merged.append(src.pop(0))
                orders[(i, j)] = merged
    comp = {(i, j) for i in range(1, k + 1) for j in range(i, k + 1) if rng.random() < 0.3}
    return MixedThinWitness(k, part, orders, comp, variant)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 8), st.integers(1, 3), st.sampled_from(VARIANTS),
       st.floats(0.0, 1.0))
def test_verifier_agrees_with_triple_enumeration(seed, n, k, variant, density):
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    g = Graph.from_edges(n, edges)
    w = _random_witness(rng, n, k, variant)
    report = verify_witness(g, w)
    brute = brute_force_violations(g, w)
    assert report.accepted == (not brute)


def test_generated_witnesses_pass_both_checkers():
    for inst in sweep():
        if inst.graph.n > 40:
            continue
        assert verify_witness(inst.graph, inst.witness).accepted, inst.name
        assert brute_force_violations(inst.graph, inst.witness) == [], inst.name


def test_acceptance_is_monotone_in_variant():
    for inst in sweep()[:60]:
        for variant in weaker_variants(inst.witness.variant):
            assert verify_witness(inst.graph, inst.witness.with_variant(variant)).accepted
