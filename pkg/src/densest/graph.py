"""Immutable undirected simple graphs and the queries the samplers rely on.

Storage is CSR: ``indptr`` / ``indices`` with every adjacency row sorted, so
set-valued answers come back in ascending id order and seeded runs are
reproducible bit for bit.

Edge-list text format::

    n m
    u v        (m lines, 0-based, u < v, lexicographically sorted)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from . import _kernels as K
from .errors import InvalidSelectionError

Selection = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    indptr: np.ndarray
    indices: np.ndarray
    _edges: np.ndarray = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build from unordered pairs; duplicates collapse, self-loops are rejected."""
        n = int(n)
        if n < 1:
            raise ValueError(f"node count must be positive, got {n}")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError(f"edge endpoint outside [0, {n})")
        if np.any(arr[:, 0] == arr[:, 1]):
            raise ValueError("self-loops are not allowed")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        und = np.unique(np.stack([lo, hi], axis=1), axis=0) if arr.size else arr
        src = np.concatenate([und[:, 0], und[:, 1]])
        dst = np.concatenate([und[:, 1], und[:, 0]])
        order = np.lexsort((dst, src))
        indices = np.ascontiguousarray(dst[order], dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        und = np.ascontiguousarray(und, dtype=np.int64)
        for a in (indptr, indices, und):
            a.flags.writeable = False
        return cls(n, indptr, indices, und)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        iu = np.triu_indices(n, 1)
        return cls.from_edges(n, np.stack(iu, axis=1))

    @property
    def m(self) -> int:
        return int(self._edges.shape[0])

    @property
    def edges(self) -> np.ndarray:
        """(m, 2) array of pairs u < v in lexicographic order."""
        return self._edges

    def neighbors(self, u: int) -> Selection:
        return tuple(int(v) for v in self.indices[self.indptr[u]:self.indptr[u + 1]])

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def has_edge(self, u: int, v: int) -> bool:
        row = self.indices[self.indptr[u]:self.indptr[u + 1]]
        i = np.searchsorted(row, v)
        return bool(i < row.size and row[i] == v)

    def adjacency_matrix(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=np.int64)
        if self.m:
            adj[self._edges[:, 0], self._edges[:, 1]] = 1
            adj[self._edges[:, 1], self._edges[:, 0]] = 1
        return adj

    def relabel(self, perm: np.ndarray) -> "Graph":
        """Graph with node ``u`` renamed to ``perm[u]``."""
        perm = np.asarray(perm, dtype=np.int64)
        return Graph.from_edges(self.n, perm[self._edges] if self.m else self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._edges, other._edges)

    def __hash__(self) -> int:
        return hash((self.n, self._edges.tobytes()))

    # -- edge-list text ---------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self._edges.tolist())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        rows = text.splitlines()
        if not rows:
            raise ValueError("empty edge list")
        try:
            n, m = (int(x) for x in rows[0].split())
        except ValueError:
            raise ValueError(f"line 1: expected 'n m', got {rows[0]!r}") from None
        body = rows[1:]
        if len(body) != m:
            raise ValueError(f"header declares {m} edges but {len(body)} lines follow")
        edges = []
        for lineno, row in enumerate(body, start=2):
            parts = row.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'u v', got {row!r}")
            u, v = int(parts[0]), int(parts[1])
            if not 0 <= u < v < n:
                raise ValueError(f"line {lineno}: need 0 <= u < v < n, got {row!r}")
            edges.append((u, v))
        g = cls.from_edges(n, edges)
        if g.m != m:
            raise ValueError("duplicate edges in edge list")
        return g

    def write(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_text().encode("ascii"))

    @classmethod
    def read(cls, path: str | Path) -> "Graph":
        return cls.from_text(Path(path).read_text(encoding="ascii"))


def as_node_array(g: Graph, nodes: Iterable[int]) -> np.ndarray:
    """Sorted int64 array of distinct valid ids (may be empty)."""
    arr = np.asarray(sorted(int(v) for v in nodes), dtype=np.int64)
    if arr.size and (arr[0] < 0 or arr[-1] >= g.n):
        raise InvalidSelectionError(f"node id outside [0, {g.n})")
    if arr.size > 1 and np.any(arr[1:] == arr[:-1]):
        raise InvalidSelectionError("selection repeats a node id")
    return arr


def as_selection(g: Graph, nodes: Iterable[int], min_size: int = 2) -> np.ndarray:
    arr = as_node_array(g, nodes)
    if arr.size < min_size:
        raise InvalidSelectionError(f"selection needs at least {min_size} nodes, got {arr.size}")
    return arr


def _mask(g: Graph, arr: np.ndarray) -> np.ndarray:
    inset = np.zeros(g.n, dtype=np.bool_)
    inset[arr] = True
    return inset


def internal_edges(g: Graph, s: Iterable[int]) -> int:
    arr = as_node_array(g, s)
    return int(K.induced_edge_count(g.indptr, g.indices, arr, arr.size, _mask(g, arr)))


def edge_density(g: Graph, s: Iterable[int]) -> float:
    """Fraction of the k(k-1)/2 possible pairs of ``s`` joined by an edge."""
    arr = as_selection(g, s)
    k = arr.size
    m_s = K.induced_edge_count(g.indptr, g.indices, arr, k, _mask(g, arr))
    return 2.0 * m_s / (k * (k - 1))


def neighbors_of_set(g: Graph, nodes: Iterable[int]) -> Selection:
    arr = as_node_array(g, nodes)
    seen = np.zeros(g.n, dtype=np.bool_)
    out = np.empty(g.n, dtype=np.int64)
    c = K.frontier(g.indptr, g.indices, arr, arr.size, _mask(g, arr), seen, out)
    return tuple(int(v) for v in out[:c])


def is_connected(g: Graph, nodes: Iterable[int]) -> bool:
    arr = as_node_array(g, nodes)
    if arr.size == 0:
        raise ValueError("connectivity of an empty node set is undefined")
    pos = np.full(g.n, -1, dtype=np.int64)
    pos[arr] = np.arange(arr.size)
    seen = np.zeros(g.n, dtype=np.bool_)
    queue = np.empty(arr.size, dtype=np.int64)
    return bool(K.induced_connected(g.indptr, g.indices, arr, arr.size, pos, seen, queue))


def non_articulation_nodes(g: Graph, nodes: Iterable[int]) -> Selection:
    """Nodes whose removal leaves the induced subgraph connected."""
    arr = as_node_array(g, nodes)
    cnt = arr.size
    if cnt < 2:
        raise ValueError("need at least two nodes")
    pos = np.full(g.n, -1, dtype=np.int64)
    pos[arr] = np.arange(cnt)
    scratch = [np.empty(cnt, dtype=np.int64) for _ in range(5)]
    is_cut = np.zeros(cnt, dtype=np.bool_)
    ok = K.articulation(g.indptr, g.indices, arr, cnt, pos, is_cut, *scratch)
    if not ok:
        raise ValueError("induced subgraph is disconnected")
    return tuple(int(v) for v in arr[~is_cut])


def pairwise_distance_sum(g: Graph, s: Iterable[int], unreachable_penalty: int | None = None) -> int:
    """Sum over ordered pairs of ``s`` of shortest-path length in the whole graph.

    Unreachable pairs cost ``unreachable_penalty``, by default the node count.
    """
    arr = as_selection(g, s, min_size=1)
    penalty = g.n if unreachable_penalty is None else int(unreachable_penalty)
    if penalty <= 0:
        raise ValueError("unreachable_penalty must be positive")
    dist = np.full(g.n, -1, dtype=np.int64)
    queue = np.empty(g.n, dtype=np.int64)
    return int(K.distance_sum(g.indptr, g.indices, g.n, arr, arr.size, penalty, dist, queue,
                              _mask(g, arr)))
