from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixthin.errors import InvalidGraph, InvalidOrder, SelfContraction
from mixthin.graph import (
    NATURAL, ONE, RED, SYMMETRIC, ZERO, ContractionTrace, Graph, TriMatrix, adjacency_trimatrix,
    contract_symmetric, natural_red_number, red_number, red_number_in_mode,
)


def c5() -> Graph:
    return Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])


@st.composite
def trimatrices(draw, max_n: int = 6):
    n = draw(st.integers(1, max_n))
    cells = np.zeros((n, n), dtype=np.int8)
    for a in range(n):
        for b in range(a, n):
            cells[a, b] = cells[b, a] = draw(st.sampled_from([ZERO, ONE, RED]))
    groups = tuple(frozenset([v]) for v in range(n))
    return TriMatrix(groups, cells)


def test_graph_rejects_loops_and_out_of_range():
    with pytest.raises(InvalidGraph):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(InvalidGraph):
        Graph.from_edges(2, [(0, 2)])


def test_duplicate_edges_collapse():
    g = Graph.from_edges(3, [(0, 1), (1, 0), (0, 1)])
    assert g.sorted_edges() == [(0, 1)]


def test_k2_adjacency():
    m = adjacency_trimatrix(Graph.from_edges(2, [(0, 1)]), [0, 1])
    assert m.to_lists() == [[0, 1], [1, 0]]


def test_empty_graph_is_all_zero():
    m = adjacency_trimatrix(Graph(3), [0, 1, 2])
    assert m.to_lists() == [[0] * 3] * 3


def test_c5_matrix_in_given_order():
    order = [0, 1, 2, 3, 4]
    m = adjacency_trimatrix(c5(), order)
    expected = [[0, 1, 0, 0, 1], [1, 0, 1, 0, 0], [0, 1, 0, 1, 0], [0, 0, 1, 0, 1], [1, 0, 0, 1, 0]]
    assert m.to_lists() == expected


def test_order_must_be_permutation():
    with pytest.raises(InvalidOrder):
        adjacency_trimatrix(c5(), [0, 1, 2, 3, 3])


def test_red_number_examples():
    m = TriMatrix((frozenset([0]), frozenset([1])), np.array([[0, RED], [RED, 0]]))
    assert red_number(m) == 1
    assert red_number(adjacency_trimatrix(Graph(4), range(4))) == 0


def test_k2_full_contraction_diagonal_red():
    m = contract_symmetric(adjacency_trimatrix(Graph.from_edges(2, [(0, 1)]), [0, 1]), 0, 1)
    assert m.to_lists() == [[RED]]
    assert red_number(m) == 1
    assert natural_red_number(m) == 0


def test_self_contraction_rejected():
    m = adjacency_trimatrix(c5(), range(5))
    with pytest.raises(SelfContraction):
        contract_symmetric(m, 2, 2)


def test_twin_merge_creates_no_offdiagonal_red():
    # 0 and 1 are false twins in the star centred at 2
    g = Graph.from_edges(4, [(0, 2), (1, 2), (2, 3)])
    m = contract_symmetric(adjacency_trimatrix(g, range(4)), 0, 1)
    assert natural_red_number(m) == 0


def test_p4_first_merge_recount():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    m = contract_symmetric(adjacency_trimatrix(g, range(4)), 0, 1)
    cells = m.cells
    by_hand = max(sum(1 for b in range(len(m)) if cells[a, b] == RED) for a in range(len(m)))
    assert red_number(m) == by_hand


@settings(max_examples=150, deadline=None)
@given(trimatrices(), st.data())
def test_contraction_preserves_symmetry_and_partition(m, data):
    if len(m) < 2:
        return
    a, b = data.draw(st.sampled_from(list(itertools.combinations(range(len(m)), 2))))
    out = contract_symmetric(m, a, b)
    assert np.array_equal(out.cells, out.cells.T)
    assert len(out) == len(m) - 1
    members = sorted(v for grp in out.groups for v in grp)
    assert members == sorted(v for grp in m.groups for v in grp)


@settings(max_examples=150, deadline=None)
@given(trimatrices(), st.data())
def test_merged_row_red_exactly_where_rows_disagree(m, data):
    if len(m) < 2:
        return
    a, b = data.draw(st.sampled_from(list(itertools.combinations(range(len(m)), 2))))
    out = contract_symmetric(m, a, b)
    keep = [c for c in range(len(m)) if c not in (a, b)]
    merged = out.index_of(min(min(m.groups[a]), min(m.groups[b])))
    for c in keep:
        x, y = m.cells[a, c], m.cells[b, c]
        want = x if x == y else RED
        assert out.cells[merged, out.index_of(min(m.groups[c]))] == want
    block = {m.cells[a, a], m.cells[a, b], m.cells[b, b]}
    assert out.cells[merged, merged] == (block.pop() if len(block) == 1 else RED)


@settings(max_examples=100, deadline=None)
@given(trimatrices())
def test_natural_never_exceeds_symmetric(m):
    assert natural_red_number(m) <= red_number(m) <= natural_red_number(m) + 1
    assert red_number_in_mode(m, SYMMETRIC) == red_number(m)
    assert red_number_in_mode(m, NATURAL) == natural_red_number(m)


def test_trace_bookkeeping():
    t = ContractionTrace()
    assert t.max_red == 0 and t.is_complete(1)
    t.append(0, 1, 2)
    t.append(0, 2, 1)
    assert t.max_red == 2 and t.is_complete(3)
    with pytest.raises(ValueError):
        ContractionTrace([(0, 1)], [])
