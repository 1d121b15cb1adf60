import json

import pytest

from densest import Graph, edge_density, erdos_renyi, plant_clique, planted_instance

# Sum of edge counts over 200 independent G(100, 0.05) graphs is
# Binomial(990000, 0.05); scipy.stats.binom.ppf at 0.005 / 0.995 gives
# 48942 / 50059, i.e. a mean per graph in [244.71, 250.295].
MEAN_EDGES_99 = (244.71, 250.295)


def test_extreme_probabilities():
    assert erdos_renyi(10, 0.0, 3).m == 0
    assert erdos_renyi(10, 1.0, 3).m == 45


@pytest.mark.parametrize("p", [-0.1, 1.5])
def test_probability_range(p):
    with pytest.raises(ValueError):
        erdos_renyi(10, p, 0)


def test_mean_edge_count_over_200_seeds():
    counts = [erdos_renyi(100, 0.05, seed).m for seed in range(200)]
    mean = sum(counts) / len(counts)
    assert MEAN_EDGES_99[0] <= mean <= MEAN_EDGES_99[1]


def test_same_seed_same_graph():
    assert erdos_renyi(60, 0.1, 11) == erdos_renyi(60, 0.1, 11)
    assert erdos_renyi(60, 0.1, 11) != erdos_renyi(60, 0.1, 12)


def test_stream_is_pinned():
    # regression values; a change here means instances are no longer reproducible
    assert erdos_renyi(8, 0.3, 0).edges.tolist() == [
        [0, 4], [0, 7], [1, 3], [1, 6], [2, 4], [2, 7], [3, 6], [4, 7]]
    assert planted_instance(30, 0.1, 5, 0).planted == (8, 14, 19, 20, 25)


class TestPlantClique:
    def test_empty_graph_triangle(self):
        inst = plant_clique(Graph.from_edges(6, []), 3, 1)
        assert inst.graph.m == 3
        assert edge_density(inst.graph, inst.planted) == 1.0

    def test_complete_graph_unchanged(self):
        g = Graph.complete(7)
        inst = plant_clique(g, 5, 2)
        assert inst.graph == g
        assert edge_density(inst.graph, inst.planted) == 1.0

    @pytest.mark.parametrize("seed", range(25))
    def test_benchmark_instances(self, seed):
        inst = planted_instance(100, 0.05, 10, seed)
        assert len(inst.planted) == 10 == len(set(inst.planted))
        assert edge_density(inst.graph, inst.planted) == 1.0
        base = erdos_renyi(100, 0.05, seed)
        old = set(map(tuple, base.edges.tolist()))
        new = set(map(tuple, inst.graph.edges.tolist()))
        assert old <= new
        assert all(u in inst.planted and v in inst.planted for u, v in new - old)

    def test_zero_probability_has_only_clique_edges(self):
        inst = planted_instance(30, 0.0, 6, 4)
        assert inst.graph.m == 15

    def test_k_too_large(self):
        with pytest.raises(ValueError):
            plant_clique(Graph.from_edges(4, []), 5, 0)

    def test_determinism(self):
        a = planted_instance(50, 0.1, 7, 99)
        b = planted_instance(50, 0.1, 7, 99)
        assert a.graph == b.graph and a.planted == b.planted

    def test_planted_choice_is_roughly_uniform(self):
        hits = [0] * 20
        for seed in range(2000):
            for v in plant_clique(Graph.from_edges(20, []), 5, seed).planted:
                hits[v] += 1
        # each node expected 500 times; sd about 19.4
        assert all(400 < h < 600 for h in hits)

    def test_write_with_sidecar(self, tmp_path):
        inst = planted_instance(40, 0.1, 5, 3)
        meta_path = inst.write(tmp_path / "g.txt")
        assert Graph.read(tmp_path / "g.txt") == inst.graph
        meta = json.loads(meta_path.read_text())
        assert meta["n"] == 40 and meta["k"] == 5 and meta["seed"] == 3
        assert meta["p"] == 0.1
        assert meta["planted"] == list(inst.planted)
        assert "PCG64" in meta["generator"]
