"""Erdős–Rényi graphs with a planted clique.

A planted instance built from one seed draws its edges from stream
``(seed, GRAPH)`` and its clique from ``(seed, CLIQUE)``; see ``rng``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import rng as rngmod
from .graph import Graph


@dataclass(frozen=True)
class PlantedInstance:
    graph: Graph
    planted: tuple[int, ...]
    p: float
    seed: int

    @property
    def k(self) -> int:
        return len(self.planted)

    def metadata(self) -> dict:
        return {
            "n": self.graph.n,
            "p": self.p,
            "k": self.k,
            "seed": self.seed,
            "planted": list(self.planted),
            "m": self.graph.m,
            "generator": rngmod.GENERATOR_NAME,
            "seed_scheme": "edges from purpose 0 (graph), clique from purpose 1 (clique)",
        }

    def write(self, path: str | Path) -> Path:
        """Write the edge list to ``path`` and metadata to ``<path>.json``; returns the sidecar path."""
        path = Path(path)
        self.graph.write(path)
        meta = path.with_name(path.name + ".json")
        meta.write_text(json.dumps(self.metadata(), indent=2, sort_keys=True) + "\n")
        return meta


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    return p


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p): one uniform draw per pair (u, v), u < v, in lexicographic order."""
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    p = _check_p(p)
    gen = rngmod.make_rng(seed, rngmod.GRAPH)
    iu, iv = np.triu_indices(n, 1)
    keep = gen.random(iu.size) < p
    return Graph.from_edges(n, np.stack([iu[keep], iv[keep]], axis=1))


def plant_clique(g: Graph, k: int, seed: int, p: float = float("nan")) -> PlantedInstance:
    """Join every pair among ``k`` uniformly chosen nodes (partial Fisher-Yates)."""
    k = int(k)
    if k < 1 or k > g.n:
        raise ValueError(f"clique size must be in [1, {g.n}], got {k}")
    gen = rngmod.make_rng(seed, rngmod.CLIQUE)
    ids = list(range(g.n))
    for i in range(k):
        j = i + rngmod.pick(gen, g.n - i)
        ids[i], ids[j] = ids[j], ids[i]
    planted = tuple(sorted(ids[:k]))
    extra = [(u, v) for a, u in enumerate(planted) for v in planted[a + 1:]]
    edges = np.concatenate([g.edges, np.asarray(extra, dtype=np.int64).reshape(-1, 2)])
    return PlantedInstance(Graph.from_edges(g.n, edges), planted, p, rngmod.check_seed(seed))


def planted_instance(n: int, p: float, k: int, seed: int) -> PlantedInstance:
    """The benchmark instance: G(n, p) plus a size-k clique, both from one seed."""
    g = erdos_renyi(n, p, seed)
    return plant_clique(g, k, seed, p=float(p))
