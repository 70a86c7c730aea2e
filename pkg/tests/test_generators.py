from __future__ import annotations

import itertools
from math import comb

import pytest

from mixthin.errors import InvalidParameters, InvalidPath, NotATree, NotProper
from mixthin.generators import (
    CARTESIAN, STRONG, gen_complement_matching, gen_complete_binary_tree, gen_grid2d, gen_lower_bound,
    gen_multidim, gen_path_tree, gen_tree, lower_bound_vertex,
)
from mixthin.graph import Graph
from mixthin.paths import PathRepresentation, from_path_representation, sample_representations
from mixthin.witness import verify_witness


@pytest.mark.parametrize("m,n", [(1, 1), (1, 5), (3, 4), (7, 7)])
def test_grid_edge_count(m, n):
    g, w = gen_grid2d(m, n)
    assert g.n == m * n
    assert len(g.edges) == m * (n - 1) + n * (m - 1)
    assert w.k == 3 and verify_witness(g, w).accepted


@pytest.mark.parametrize("t", [1, 2, 5])
def test_complement_matching(t):
    g, w = gen_complement_matching(t)
    assert g.n == 2 * t
    assert len(g.edges) == comb(2 * t, 2) - t
    assert w.k == 1 and verify_witness(g, w).accepted


@pytest.mark.parametrize("d,m", [(1, 4), (2, 3), (3, 3)])
def test_multidim_edge_counts(d, m):
    g, w = gen_multidim(d, m, CARTESIAN)
    assert len(g.edges) == d * m ** (d - 1) * (m - 1)
    assert w.k == 3 ** (d - 1)
    s, ws = gen_multidim(d, m, STRONG)
    assert len(s.edges) == ((3 * m - 2) ** d - m ** d) // 2
    assert verify_witness(g, w).accepted and verify_witness(s, ws).accepted


def test_trees():
    g, w = gen_path_tree(6)
    assert g.sorted_edges() == [(i, i + 1) for i in range(5)]
    b, wb = gen_complete_binary_tree(3)
    assert b.n == 15 and len(b.edges) == 14
    assert verify_witness(b, wb).accepted
    # depth 0 has residue 0, which is numbered as part 3
    assert w.part == [3, 1, 2, 3, 1, 2]


def test_tree_with_other_root():
    g, w = gen_tree([(0, 1), (1, 2), (1, 3), (3, 4)], root=3)
    assert w.part[3] == 3 and w.part[1] == 1 and w.part[0] == 2
    assert verify_witness(g, w).accepted


def test_not_a_tree():
    with pytest.raises(NotATree):
        gen_tree([(0, 1), (1, 2), (2, 0)])
    with pytest.raises(NotATree):
        gen_tree([(0, 1), (2, 3), (3, 4)])


def test_bad_parameters():
    for call in (lambda: gen_grid2d(0, 3), lambda: gen_complement_matching(0),
                 lambda: gen_multidim(2, 3, "taxicab"), lambda: gen_lower_bound(2, 3),
                 lambda: gen_lower_bound(0, 4)):
        with pytest.raises(InvalidParameters):
            call()


@pytest.mark.parametrize("k", [1, 2, 3])
def test_lower_bound_structure(k):
    h = 4 * k - 4
    g, w = gen_lower_bound(k, h)
    chains = 2 * k + 1
    assert g.n == chains * (h + 1) and w.k == chains
    for i in range(1, chains + 1):
        for a, b in itertools.combinations(range(h + 1), 2):
            assert g.has_edge(lower_bound_vertex(k, h, i, a), lower_bound_vertex(k, h, i, b))
    assert lower_bound_vertex(k, h, chains + 1, 0) == lower_bound_vertex(k, h, 1, 0)
    assert verify_witness(g, w).accepted


def test_path_samples_are_intersection_graphs():
    for name, rep in sample_representations().items():
        g, w = from_path_representation(rep)
        for u, v in itertools.combinations(sorted(rep.paths), 2):
            meet = bool(set(rep.paths[u]) & set(rep.paths[v]))
            assert g.has_edge(u, v) == meet, (name, u, v)
        assert verify_witness(g, w).accepted, name


def test_path_errors():
    host = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(InvalidPath):
        from_path_representation(PathRepresentation(host, {(0, 1): 3}, {0: [2, 4]}))
    with pytest.raises(NotProper):
        from_path_representation(PathRepresentation(host, {(0, 1): 4}, {0: [2, 3, 4], 1: [3]}))
