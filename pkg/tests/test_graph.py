import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from densest import (
    Graph,
    InvalidSelectionError,
    edge_density,
    is_connected,
    neighbors_of_set,
    non_articulation_nodes,
    pairwise_distance_sum,
)
from densest.graph import internal_edges

from conftest import random_graph


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges.tolist())
    return h


def test_adjacency_invariants():
    g = random_graph(40, 0.15, 3)
    total = 0
    for u in range(g.n):
        nb = g.neighbors(u)
        assert list(nb) == sorted(nb)
        assert u not in nb
        for v in nb:
            assert u in g.neighbors(v)
            assert g.has_edge(u, v)
        total += len(nb)
    assert total == 2 * g.m
    assert np.all(g.edges[:, 0] < g.edges[:, 1])


def test_from_edges_collapses_duplicates_and_rejects_loops():
    g = Graph.from_edges(3, [(1, 0), (0, 1), (2, 1)])
    assert g.m == 2
    assert g.edges.tolist() == [[0, 1], [1, 2]]
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


def test_edge_list_round_trip(tmp_path):
    g = random_graph(25, 0.2, 9)
    text = g.to_text()
    first, *rest = text.splitlines()
    assert first == f"25 {g.m}"
    pairs = [tuple(map(int, r.split())) for r in rest]
    assert pairs == sorted(pairs)
    assert text.endswith("\n") and not text.endswith("\n\n")
    g.write(tmp_path / "g.txt")
    assert Graph.read(tmp_path / "g.txt") == g


@pytest.mark.parametrize("text", ["3 1\n0 1\n1 2\n", "3 1\n1 0\n", "3 1\n0 5\n", "x\n", "3 2\n0 1\n0 1\n"])
def test_edge_list_rejects_malformed(text):
    with pytest.raises(ValueError):
        Graph.from_text(text)


class TestEdgeDensity:
    def test_clique(self):
        g = Graph.complete(12)
        assert edge_density(g, range(10)) == 1.0

    def test_empty(self):
        g = Graph.from_edges(10, [])
        assert edge_density(g, range(10)) == 0.0

    def test_tree(self):
        g = Graph.from_edges(10, [(i, i + 1) for i in range(9)])
        assert edge_density(g, range(10)) == pytest.approx(0.2, abs=0, rel=0)
        assert edge_density(g, range(10)) == 2 * 9 / 90

    def test_needs_two_nodes(self):
        g = Graph.complete(4)
        with pytest.raises(InvalidSelectionError):
            edge_density(g, [1])
        with pytest.raises(InvalidSelectionError):
            edge_density(g, [1, 1])
        with pytest.raises(InvalidSelectionError):
            edge_density(g, [1, 9])

    @given(st.integers(0, 2**32 - 1), st.integers(2, 12))
    def test_bounds_and_clique_characterization(self, seed, k):
        g = random_graph(15, 0.5, seed)
        gen = np.random.default_rng(seed)
        s = gen.choice(15, size=k, replace=False)
        d = edge_density(g, s)
        assert 0.0 <= d <= 1.0
        complete = all(g.has_edge(u, v) for u, v in itertools.combinations(s.tolist(), 2))
        assert (d == 1.0) == complete

    @given(st.integers(0, 2**32 - 1))
    def test_relabeling_invariance(self, seed):
        g = random_graph(20, 0.3, seed)
        gen = np.random.default_rng(seed + 1)
        perm = gen.permutation(20)
        s = gen.choice(20, size=6, replace=False)
        assert edge_density(g.relabel(perm), perm[s]) == edge_density(g, s)

    def test_internal_edges_matches_networkx(self):
        g = random_graph(30, 0.2, 5)
        s = list(range(0, 30, 3))
        assert internal_edges(g, s) == to_nx(g).subgraph(s).number_of_edges()


class TestNeighborsOfSet:
    def test_examples(self, path3, triangle):
        assert neighbors_of_set(path3, [0]) == (1,)
        assert neighbors_of_set(triangle, [0, 1]) == (2,)
        iso = Graph.from_edges(4, [(0, 1)])
        assert neighbors_of_set(iso, [2, 3]) == ()
        assert neighbors_of_set(iso, []) == ()

    @given(st.integers(0, 2**32 - 1))
    def test_disjoint_sorted_and_exact(self, seed):
        g = random_graph(25, 0.15, seed)
        nodes = set(np.random.default_rng(seed).choice(25, size=5, replace=False).tolist())
        out = neighbors_of_set(g, nodes)
        assert not set(out) & nodes
        assert list(out) == sorted(out)
        h = to_nx(g)
        assert set(out) == {v for u in nodes for v in h[u]} - nodes


class TestConnectivity:
    def test_examples(self, triangle):
        assert is_connected(triangle, [0, 1, 2])
        assert not is_connected(Graph.from_edges(2, []), [0, 1])
        assert is_connected(triangle, [2])
        with pytest.raises(ValueError):
            is_connected(triangle, [])

    def test_uses_induced_edges_only(self, path3):
        # 0 and 2 are joined only through 1
        assert not is_connected(path3, [0, 2])


class TestNonArticulation:
    def test_examples(self, path3, triangle, star):
        assert non_articulation_nodes(path3, [0, 1, 2]) == (0, 2)
        assert non_articulation_nodes(triangle, [0, 1, 2]) == (0, 1, 2)
        assert non_articulation_nodes(star, [0, 1, 2, 3]) == (1, 2, 3)

    def test_disconnected_rejected(self, path3):
        with pytest.raises(ValueError):
            non_articulation_nodes(path3, [0, 2])

    def test_agrees_with_naive_removal_on_1000_cases(self):
        gen = np.random.default_rng(2024)
        checked = 0
        while checked < 1000:
            n = int(gen.integers(2, 31))
            g = random_graph(n, float(gen.uniform(0.05, 0.6)), int(gen.integers(2**32)))
            size = int(gen.integers(2, n + 1))
            nodes = sorted(gen.choice(n, size=size, replace=False).tolist())
            h = to_nx(g).subgraph(nodes)
            if not nx.is_connected(h):
                continue
            naive = tuple(v for v in nodes if nx.is_connected(h.subgraph(set(nodes) - {v})))
            assert non_articulation_nodes(g, nodes) == naive
            checked += 1


class TestDistanceSum:
    def test_examples(self, triangle):
        assert pairwise_distance_sum(triangle, [0, 1, 2]) == 6
        g = Graph.complete(12)
        assert pairwise_distance_sum(g, range(10)) == 90
        two = Graph.from_edges(2, [])
        assert pairwise_distance_sum(two, [0, 1], unreachable_penalty=100) == 200

    def test_default_penalty_is_node_count(self):
        g = Graph.from_edges(5, [(0, 1)])
        assert pairwise_distance_sum(g, [0, 1, 4]) == 2 * 1 + 4 * 5

    def test_paths_may_leave_selection(self, path3):
        assert pairwise_distance_sum(path3, [0, 2]) == 4

    @given(st.integers(0, 2**32 - 1))
    def test_matches_networkx_bfs(self, seed):
        g = random_graph(30, 0.08, seed)
        s = np.random.default_rng(seed).choice(30, size=6, replace=False).tolist()
        h = to_nx(g)
        expect = 0
        for u in s:
            lengths = nx.single_source_shortest_path_length(h, u)
            expect += sum(lengths.get(v, g.n) for v in s)
        got = pairwise_distance_sum(g, s)
        assert got == expect
        assert got % 2 == 0

    @given(st.integers(0, 2**32 - 1), st.integers(2, 8))
    def test_planted_clique_gives_k_times_k_minus_1(self, seed, k):
        from densest import planted_instance
        inst = planted_instance(30, 0.1, k, seed)
        assert pairwise_distance_sum(inst.graph, inst.planted) == k * (k - 1)
