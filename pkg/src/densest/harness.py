"""Exact oracle, replication study and aggregation.

Seed scheme for a study with master seed ``M``:

* replicate ``r`` (1-based) builds its planted instance from seed ``M + r``;
* algorithm ``a`` on replicate ``r`` runs its chain from seed
  ``M + r + OFFSETS[a]``.

Instance and chain streams use different purposes (see ``rng``), so equal
integer seeds never share a stream.
"""

from __future__ import annotations

import json
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels as K
from . import rng as rngmod
from .errors import EnumerationCapError, InstanceInfeasibleError
from .generators import planted_instance
from .graph import Graph
from .saa import SaaConfig
from .samplers import ALGORITHMS, SamplerConfig, Trace, run_chain

ENUMERATION_CAP = 10_000_000
OFFSETS = {"SM": 1_000_003, "SA": 2_000_003, "SAA": 3_000_017}


def brute_force_densest(g: Graph, k: int, cap: int = ENUMERATION_CAP) -> tuple[float, tuple[int, ...]]:
    """Exact maximum density over all k-subsets and its lexicographically smallest witness."""
    k = int(k)
    if not 2 <= k <= g.n:
        raise ValueError(f"k must be in [2, n={g.n}], got {k}")
    count = math.comb(g.n, k)
    if count > cap:
        raise EnumerationCapError(count, cap)
    witness = np.empty(k, dtype=np.int64)
    best = K.brute_force(g.adjacency_matrix(), g.n, k, witness)
    return 2.0 * int(best) / (k * (k - 1)), tuple(int(v) for v in witness)


def first_hit_iteration(trace: Trace, target: float) -> int | None:
    hit = np.flatnonzero(np.asarray(trace.best_density) >= target - 1e-12)
    return int(trace.iteration[hit[0]]) if hit.size else None


@dataclass(frozen=True)
class StudyConfig:
    replicates: int = 100
    n: int = 100
    p: float = 0.05
    k: int = 10
    max_iterations: int = 10_000
    algorithms: tuple[str, ...] = ALGORITHMS
    master_seed: int = 0
    alpha: float = 0.9
    saa: SaaConfig = field(default_factory=SaaConfig)
    stop_at_target: bool = False

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicates must be at least 1")
        algos = tuple(str(a).upper() for a in self.algorithms)
        if not algos:
            raise ValueError("at least one algorithm is required")
        bad = [a for a in algos if a not in ALGORITHMS]
        if bad:
            raise ValueError(f"unknown algorithms {bad}")
        object.__setattr__(self, "algorithms", algos)
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        rngmod.check_seed(self.master_seed)

    def echo(self) -> dict:
        part = self.saa.partition
        return {
            "replicates": self.replicates,
            "n": self.n,
            "p": self.p,
            "k": self.k,
            "max_iterations": self.max_iterations,
            "algorithms": list(self.algorithms),
            "master_seed": self.master_seed,
            "alpha": self.alpha,
            "stop_at_target": self.stop_at_target,
            "saa": {
                "n_regions": part.n_regions,
                "a_first": part.thresholds[0],
                "a_last": part.thresholds[-1],
                "plateau": self.saa.plateau,
                "base_temperature": self.saa.base_temperature,
            },
            "seed_scheme": {"instance": "master_seed + r", "chain": "master_seed + r + offset",
                            "offsets": OFFSETS},
        }


@dataclass(frozen=True)
class ReplicateRow:
    replicate: int
    algorithm: str
    success: bool
    first_hit: int | None
    wall_seconds: float
    best_density: float | None
    error: str | None = None


@dataclass
class StudySummary:
    config: dict
    rows: list[ReplicateRow]
    aggregates: dict[str, dict]

    def to_dict(self) -> dict:
        return {"config": self.config, "rows": [asdict(r) for r in self.rows],
                "aggregates": self.aggregates}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json())

    def table(self) -> str:
        lines = [f"{'algorithm':<10}{'successes':>12}{'median_first_hit':>18}{'mean_wall_s':>14}"]
        for algo, agg in self.aggregates.items():
            med = agg["median_first_hit"]
            med_s = "-" if med is None else f"{med:.1f}"
            lines.append(f"{algo:<10}{agg['success_count']:>6}/{agg['replicates']:<5}"
                         f"{med_s:>18}{agg['mean_wall_seconds']:>14.4f}")
        return "\n".join(lines)

    def without_timing(self) -> dict:
        d = self.to_dict()
        for row in d["rows"]:
            row.pop("wall_seconds")
        for agg in d["aggregates"].values():
            for key in ("mean_wall_seconds", "median_wall_seconds"):
                agg.pop(key)
        return d


_warm = False


def warm_up() -> None:
    """Compile every kernel once so the first timed chain does not pay for JIT."""
    global _warm
    if _warm:
        return
    g = Graph.complete(6)
    for algo in ALGORITHMS:
        run_chain(g, SamplerConfig(algo, 3, 20, seed=1), SaaConfig())
    brute_force_densest(g, 3)
    _warm = True


def run_replicate(cfg: StudyConfig, r: int) -> list[ReplicateRow]:
    warm_up()
    inst = planted_instance(cfg.n, cfg.p, cfg.k, rngmod.derive(cfg.master_seed, r))
    full = cfg.k * (cfg.k - 1) // 2
    rows = []
    for algo in cfg.algorithms:
        chain_cfg = SamplerConfig(
            algo, cfg.k, cfg.max_iterations, alpha=cfg.alpha,
            seed=rngmod.derive(cfg.master_seed, r + OFFSETS[algo]),
            target_density=1.0, stop_at_target=cfg.stop_at_target)
        t0 = time.perf_counter()
        try:
            trace, state = run_chain(inst.graph, chain_cfg, cfg.saa)
        except InstanceInfeasibleError as exc:
            rows.append(ReplicateRow(r, algo, False, None, time.perf_counter() - t0, None, str(exc)))
            continue
        wall = time.perf_counter() - t0
        hits = np.flatnonzero(trace.best_edges == full)
        first = int(trace.iteration[hits[0]]) if hits.size else None
        rows.append(ReplicateRow(r, algo, first is not None, first, wall, state.best_density))
    return rows


def _run_one(args):
    cfg, r = args
    return run_replicate(cfg, r)


def aggregate(cfg: StudyConfig, rows: list[ReplicateRow]) -> dict[str, dict]:
    out = {}
    for algo in cfg.algorithms:
        mine = [row for row in rows if row.algorithm == algo]
        hits = [row.first_hit for row in mine if row.first_hit is not None]
        walls = [row.wall_seconds for row in mine]
        out[algo] = {
            "replicates": len(mine),
            "success_count": sum(row.success for row in mine),
            "first_hit_iterations": hits,
            "median_first_hit": float(statistics.median(hits)) if hits else None,
            "mean_wall_seconds": float(statistics.fmean(walls)) if walls else 0.0,
            "median_wall_seconds": float(statistics.median(walls)) if walls else 0.0,
            "failures": sum(row.error is not None for row in mine),
        }
    return out


def run_replication_study(cfg: StudyConfig, jobs: int = 1) -> StudySummary:
    """Run every replicate; ``jobs > 1`` spreads replicates over worker processes."""
    reps = range(1, cfg.replicates + 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_one, [(cfg, r) for r in reps]))
    else:
        chunks = [run_replicate(cfg, r) for r in reps]
    rows = sorted((row for chunk in chunks for row in chunk),
                  key=lambda row: (row.replicate, cfg.algorithms.index(row.algorithm)))
    return StudySummary(cfg.echo(), rows, aggregate(cfg, rows))
