"""SM and SA chains, their moves and acceptance rules, and the chain runner.

The move and acceptance functions here are thin wrappers over the same
kernels the chain loop uses, so a single step can be exercised in isolation
with the exact behaviour it has inside a run.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Literal

import numpy as np

from . import _kernels as K
from . import rng as rngmod
from .errors import InstanceInfeasibleError
from .graph import Graph, Selection, as_node_array, as_selection, is_connected
from .saa import SaaConfig, sqrt_temperature

Algorithm = Literal["SM", "SA", "SAA"]
ALGORITHMS: tuple[str, ...] = ("SM", "SA", "SAA")

INIT_ATTEMPTS = 1000
GLOBAL_RETRIES = 100
GEOMETRIC_BASE = 0.001
GEOMETRIC_SCALE = 1000.0
TRACE_HEADER = ("iteration", "density", "best_density", "temperature", "accepted", "region")


def geometric_temperature(l, base: float = GEOMETRIC_BASE, scale: float = GEOMETRIC_SCALE):
    """``base ** (l / scale)``; accepts scalars or arrays."""
    l_arr = np.asarray(l, dtype=np.float64)
    if np.any(l_arr < 0):
        raise ValueError("iteration index must be non-negative")
    out = np.power(base, l_arr / scale)
    return float(out) if out.ndim == 0 else out


def sm_accept(l_new: int, l_old: int, k: int, rng: np.random.Generator) -> bool:
    """Always take a move that does not lengthen L, else with prob ``exp(-(l_new - l_old) / k)``."""
    u = rng.random()
    return l_new <= l_old or u < math.exp(-(l_new - l_old) / k)


def metropolis_accept_density(d_new: float, d_old: float, t: float, rng: np.random.Generator) -> bool:
    if t <= 0:
        raise ValueError(f"temperature must be positive, got {t}")
    x = (d_new - d_old) / t
    u = rng.random()
    return x >= 0.0 or u < math.exp(x)


# -- moves ----------------------------------------------------------------

def _as_tuple(arr: np.ndarray) -> Selection:
    return tuple(int(v) for v in arr)


def _mask(g: Graph, arr: np.ndarray) -> np.ndarray:
    inset = np.zeros(g.n, dtype=np.bool_)
    inset[arr] = True
    return inset


def init_selection(g: Graph, k: int, rng: np.random.Generator,
                   attempts: int = INIT_ATTEMPTS) -> Selection:
    """Connected k-set grown from a uniform start node by uniform frontier picks."""
    if not 1 <= k <= g.n:
        raise InstanceInfeasibleError(f"k={k} is not in [1, n={g.n}]")
    out = np.empty(k, dtype=np.int64)
    if not K.init_selection(g.indptr, g.indices, g.n, k, attempts, rng, out):
        raise InstanceInfeasibleError(
            f"no connected {k}-node subgraph found after {attempts} growth attempts")
    return _as_tuple(out)


def _require_connected(g: Graph, arr: np.ndarray) -> None:
    if not is_connected(g, arr):
        raise ValueError("selection does not induce a connected subgraph")


def local_move(g: Graph, s: Iterable[int], rng: np.random.Generator) -> Selection | None:
    """Add a random neighbor of ``s``, drop a random selected node that is not a cut vertex.

    Returns None when ``s`` has no outside neighbor.
    """
    sel = as_selection(g, s, min_size=1)
    _require_connected(g, sel)
    k = sel.size
    n = g.n
    out = np.empty(k, dtype=np.int64)
    small = [np.empty(k + 1, dtype=np.int64) for _ in range(5)]
    ok = K.local_move(g.indptr, g.indices, sel, k, _mask(g, sel), rng, out,
                      np.zeros(n, dtype=np.bool_), np.empty(n, dtype=np.int64),
                      np.empty(k + 1, dtype=np.int64), np.full(n, -1, dtype=np.int64),
                      np.zeros(k + 1, dtype=np.bool_), *small)
    return _as_tuple(out) if ok else None


def global_move(g: Graph, s: Iterable[int], k: int, rng: np.random.Generator,
                retries: int = GLOBAL_RETRIES) -> Selection | None:
    """Grow a fresh connected k-set from a random node outside ``s``; None if growth keeps stalling."""
    sel = as_node_array(g, s)
    if k >= g.n or sel.size >= g.n:
        raise ValueError(f"global move needs k < n and a node outside s (k={k}, n={g.n})")
    n = g.n
    out = np.empty(k, dtype=np.int64)
    ok = K.global_move(g.indptr, g.indices, n, _mask(g, sel), n - sel.size, k, retries, rng, out,
                       np.zeros(n, dtype=np.bool_), np.zeros(n, dtype=np.bool_),
                       np.empty(n, dtype=np.int64))
    return _as_tuple(out) if ok else None


def sm_swap_move(g: Graph, s: Iterable[int], rng: np.random.Generator) -> Selection:
    """Drop a random node ``u0``, add a random outside neighbor of the rest.

    With no such neighbor ``u1`` is drawn from all outside nodes; if ``s``
    covers the graph it is returned unchanged.
    """
    sel = as_selection(g, s, min_size=1)
    k = sel.size
    n = g.n
    out = np.empty(k, dtype=np.int64)
    K.sm_swap(g.indptr, g.indices, n, sel, k, _mask(g, sel), rng, out,
              np.zeros(n, dtype=np.bool_), np.empty(n, dtype=np.int64), np.empty(n, dtype=np.int64))
    return _as_tuple(out)


def sm_ninth_step(g: Graph, s: Iterable[int], rng: np.random.Generator) -> Selection:
    """Replace a random node of ``s`` by a node with no edge into ``s`` (if any)."""
    sel = as_selection(g, s, min_size=1)
    k = sel.size
    n = g.n
    out = np.empty(k, dtype=np.int64)
    K.sm_ninth(g.indptr, g.indices, n, sel, k, _mask(g, sel), rng, out,
               np.zeros(n, dtype=np.bool_), np.empty(n, dtype=np.int64))
    return _as_tuple(out)


# -- chains ---------------------------------------------------------------

@dataclass(frozen=True)
class SamplerConfig:
    algorithm: str
    k: int
    max_iterations: int = 10_000
    alpha: float = 0.9
    seed: int = 0
    target_density: float | None = 1.0
    stop_at_target: bool = False
    # None picks the algorithm's own schedule: geometric for SA, sqrt for SAA
    schedule: Literal["geometric", "sqrt"] | None = None
    unreachable_penalty: int | None = None

    def __post_init__(self):
        algo = str(self.algorithm).upper()
        if algo not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        object.__setattr__(self, "algorithm", algo)
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        rngmod.check_seed(self.seed)
        if self.schedule not in (None, "geometric", "sqrt"):
            raise ValueError(f"unknown schedule {self.schedule!r}")
        if self.stop_at_target and self.target_density is None:
            raise ValueError("stop_at_target needs target_density")


@dataclass
class Trace:
    """Per-iteration record of one chain; row ``i`` is iteration ``i + 1``.

    ``objective`` holds the SM distance sum L of the state after each
    iteration, with the start state at index 0 (empty for SA/SAA).
    ``proposed`` is L of each SM proposal and ``draws`` the acceptance
    uniform (NaN when no proposal was made).
    """

    algorithm: str
    k: int
    iteration: np.ndarray
    density: np.ndarray
    best_density: np.ndarray
    temperature: np.ndarray
    accepted: np.ndarray
    region: np.ndarray | None
    edges: np.ndarray
    best_edges: np.ndarray
    draws: np.ndarray
    objective: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    proposed: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    states: np.ndarray | None = None

    def __len__(self) -> int:
        return int(self.iteration.size)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(TRACE_HEADER) + "\n")
        region = self.region
        for i in range(len(self)):
            reg = "" if region is None else str(int(region[i]))
            buf.write(f"{int(self.iteration[i])},{self.density[i]:.17g},"
                      f"{self.best_density[i]:.17g},{self.temperature[i]:.17g},"
                      f"{int(bool(self.accepted[i]))},{reg}\n")
        return buf.getvalue()

    def write_csv(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_csv().encode("ascii"))


@dataclass
class ChainState:
    current: Selection
    current_density: float
    best: Selection
    best_density: float
    iteration: int
    rng_state: dict
    theta: np.ndarray | None = None


def read_trace_csv(text: str) -> dict[str, np.ndarray]:
    """Parse trace CSV into column arrays; malformed rows raise ValueError naming the line."""
    rows = text.splitlines()
    if not rows or tuple(rows[0].split(",")) != TRACE_HEADER:
        raise ValueError(f"line 1: expected header {','.join(TRACE_HEADER)!r}")
    cols: dict[str, list] = {name: [] for name in TRACE_HEADER}
    for lineno, row in enumerate(csv.reader(rows[1:]), start=2):
        if len(row) != len(TRACE_HEADER):
            raise ValueError(f"line {lineno}: expected {len(TRACE_HEADER)} fields, got {len(row)}")
        try:
            cols["iteration"].append(int(row[0]))
            cols["density"].append(float(row[1]))
            cols["best_density"].append(float(row[2]))
            cols["temperature"].append(float(row[3]))
            cols["accepted"].append(int(row[4]))
            cols["region"].append(int(row[5]) if row[5] else -1)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return {
        "iteration": np.asarray(cols["iteration"], dtype=np.int64),
        "density": np.asarray(cols["density"], dtype=np.float64),
        "best_density": np.asarray(cols["best_density"], dtype=np.float64),
        "temperature": np.asarray(cols["temperature"], dtype=np.float64),
        "accepted": np.asarray(cols["accepted"], dtype=np.int64),
        "region": np.asarray(cols["region"], dtype=np.int64),
    }


def temperature_schedule(cfg: SamplerConfig, saa_cfg: SaaConfig | None, n_iter: int) -> np.ndarray:
    l = np.arange(1, n_iter + 1)
    schedule = cfg.schedule or ("sqrt" if cfg.algorithm == "SAA" else "geometric")
    if schedule == "geometric":
        return geometric_temperature(l)
    sc = saa_cfg or SaaConfig()
    return sqrt_temperature(l, sc.base_temperature, sc.plateau)


def run_chain(g: Graph, cfg: SamplerConfig, saa_cfg: SaaConfig | None = None,
              start: Iterable[int] | None = None,
              rng: np.random.Generator | None = None,
              record_states: bool = False) -> tuple[Trace, ChainState]:
    """Run ``cfg.max_iterations`` iterations of the configured algorithm.

    The chain draws from ``rng`` when given, otherwise from the seeded chain
    stream of ``cfg.seed``. The start state is grown at random unless
    ``start`` is supplied. ``record_states`` keeps every post-iteration
    selection in ``Trace.states`` (test and debugging aid).
    """
    if cfg.algorithm == "SAA" and saa_cfg is None:
        raise ValueError("SAA needs an SaaConfig")
    k = cfg.k
    if rng is None:
        rng = rngmod.make_rng(cfg.seed, rngmod.CHAIN)
    if start is None:
        s0 = np.asarray(init_selection(g, k, rng), dtype=np.int64)
    else:
        s0 = as_selection(g, start)
        if s0.size != k:
            raise ValueError(f"start selection has {s0.size} nodes, expected {k}")
    n_iter = cfg.max_iterations
    full = k * (k - 1) // 2
    if cfg.target_density is None:
        target_edges = full + 1
    else:
        target_edges = int(math.ceil(cfg.target_density * full - 1e-9))
    stop = bool(cfg.stop_at_target)

    cur = np.empty(k, dtype=np.int64)
    best = np.empty(k, dtype=np.int64)
    density = np.empty(n_iter)
    best_density = np.empty(n_iter)
    edges = np.empty(n_iter, dtype=np.int64)
    best_edges = np.empty(n_iter, dtype=np.int64)
    accepted = np.zeros(n_iter, dtype=np.bool_)
    draws = np.empty(n_iter)
    states = np.empty((n_iter if record_states else 0, k), dtype=np.int64)
    theta = None

    if cfg.algorithm == "SM":
        penalty = g.n if cfg.unreachable_penalty is None else int(cfg.unreachable_penalty)
        objective = np.empty(n_iter + 1, dtype=np.int64)
        proposed = np.empty(n_iter, dtype=np.int64)
        done = K.run_sm(g.indptr, g.indices, g.n, k, s0, n_iter, penalty, target_edges, stop,
                        rng, cur, best, density, best_density, edges, best_edges, accepted,
                        objective, proposed, draws, states)
        temps = np.full(done, float(k))
        region = None
        objective = objective[:done + 1]
        proposed = proposed[:done]
    else:
        temps = temperature_schedule(cfg, saa_cfg, n_iter)
        use_theta = cfg.algorithm == "SAA"
        if use_theta:
            thresholds = saa_cfg.partition.as_array()
            pi = saa_cfg.pi_array()
            theta = saa_cfg.theta_array()
            gains = saa_cfg.gains(n_iter)
        else:
            thresholds = np.empty(0)
            pi = np.ones(1)
            theta = np.zeros(1)
            gains = np.zeros(n_iter)
        region_arr = np.zeros(n_iter, dtype=np.int64)
        done = K.run_anneal(g.indptr, g.indices, g.n, k, s0, n_iter, float(cfg.alpha), temps,
                            use_theta, thresholds, pi, theta, gains, target_edges, stop, rng,
                            cur, best, density, best_density, edges, best_edges, accepted,
                            region_arr, draws, states)
        temps = temps[:done]
        region = region_arr[:done] if use_theta else None
        if not use_theta:
            theta = None
        objective = np.empty(0, dtype=np.int64)
        proposed = np.empty(0, dtype=np.int64)

    trace = Trace(
        algorithm=cfg.algorithm,
        k=k,
        iteration=np.arange(1, done + 1, dtype=np.int64),
        density=density[:done],
        best_density=best_density[:done],
        temperature=temps,
        accepted=accepted[:done],
        region=region,
        edges=edges[:done],
        best_edges=best_edges[:done],
        draws=draws[:done],
        objective=objective,
        proposed=proposed,
        states=states[:done] if record_states else None,
    )
    state = ChainState(
        current=_as_tuple(cur),
        current_density=float(density[done - 1]),
        best=_as_tuple(best),
        best_density=float(best_density[done - 1]),
        iteration=int(done),
        rng_state=rng.bit_generator.state,
        theta=theta,
    )
    return trace, state
