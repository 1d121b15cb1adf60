"""Stochastic approximation annealing pieces.

Density bands ``E_1..E_N`` split at thresholds ``a_1 < ... < a_{N-1}``; each band
carries an adaptive weight. A move from band ``j_old`` to ``j_new`` gets the
bonus ``theta[j_old] - theta[j_new]`` in its log acceptance ratio, and after
every iteration the occupied band's weight grows by ``eta * (1 - pi_j)`` while
every other band loses ``eta * pi_i``. A chain that lingers in one band is
pushed out of it.

Regions are numbered from 1 in this module's public API.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_REGIONS = 51
DEFAULT_A_FIRST = 0.15
DEFAULT_A_LAST = 0.99
DEFAULT_PLATEAU = 1500
DEFAULT_BASE_TEMPERATURE = 0.001
DESIRED_DECAY = 0.1


@dataclass(frozen=True)
class Partition:
    thresholds: tuple[float, ...]

    def __post_init__(self):
        th = tuple(float(a) for a in self.thresholds)
        if not th:
            raise ValueError("a partition needs at least one threshold")
        if any(not 0.0 <= a <= 1.0 for a in th):
            raise ValueError("thresholds must lie in [0, 1]")
        if any(b <= a for a, b in zip(th, th[1:])):
            raise ValueError("thresholds must be strictly increasing")
        object.__setattr__(self, "thresholds", th)

    @property
    def n_regions(self) -> int:
        return len(self.thresholds) + 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.thresholds, dtype=np.float64)


def default_partition(k: int | None = None, n_regions: int = DEFAULT_REGIONS,
                      a_first: float = DEFAULT_A_FIRST, a_last: float = DEFAULT_A_LAST) -> Partition:
    """Evenly spaced thresholds from ``a_first`` to ``a_last``.

    The defaults suit k around 10: every connected k-subgraph has density at
    least 2/k, so the bottom band stays empty, and only cliques exceed 0.99.
    ``k`` is accepted for call-site symmetry and does not change the grid.
    """
    if n_regions < 3:
        raise ValueError(f"need at least 3 regions, got {n_regions}")
    if not (0.0 <= a_first < a_last <= 1.0):
        raise ValueError(f"need 0 <= a_first < a_last <= 1, got ({a_first}, {a_last})")
    return Partition(tuple(np.linspace(a_first, a_last, n_regions - 1).tolist()))


def region_index(partition: Partition, d: float) -> int:
    """Band of density ``d``; a value equal to ``a_i`` belongs to band i."""
    if not 0.0 <= d <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {d}")
    return int(np.searchsorted(partition.as_array(), d, side="left")) + 1


def desired_distribution(n_regions: int, decay: float = DESIRED_DECAY) -> np.ndarray:
    if n_regions < 1:
        raise ValueError("n_regions must be at least 1")
    w = np.exp(-decay * np.arange(n_regions))
    return w / w.sum()


def sqrt_temperature(l, base: float = DEFAULT_BASE_TEMPERATURE, plateau: int = DEFAULT_PLATEAU):
    """``base * sqrt(plateau / max(l, plateau))``; accepts scalars or arrays."""
    l_arr = np.asarray(l, dtype=np.float64)
    if np.any(l_arr < 1):
        raise ValueError("iteration index starts at 1")
    out = base * np.sqrt(plateau / np.maximum(l_arr, plateau))
    return float(out) if out.ndim == 0 else out


def gain_factor(l, plateau: int = DEFAULT_PLATEAU):
    l_arr = np.asarray(l, dtype=np.float64)
    if np.any(l_arr < 1):
        raise ValueError("iteration index starts at 1")
    out = plateau / np.maximum(plateau, l_arr)
    return float(out) if out.ndim == 0 else out


def theta_update(theta: np.ndarray, occupied_region: int, pi: np.ndarray, eta: float) -> np.ndarray:
    """``theta + eta * (e - pi)`` with ``e`` the indicator of ``occupied_region``."""
    theta = np.asarray(theta, dtype=np.float64)
    if not 1 <= occupied_region <= theta.size:
        raise ValueError(f"region {occupied_region} outside [1, {theta.size}]")
    out = theta - eta * np.asarray(pi, dtype=np.float64)
    out[occupied_region - 1] += eta
    return out


def saa_log_ratio(d_new: float, d_old: float, t: float, theta: np.ndarray, j_old: int, j_new: int) -> float:
    if t <= 0:
        raise ValueError(f"temperature must be positive, got {t}")
    return (d_new - d_old) / t + theta[j_old - 1] - theta[j_new - 1]


def saa_accept(d_new: float, d_old: float, t: float, theta: np.ndarray, j_old: int, j_new: int,
               rng: np.random.Generator) -> bool:
    x = saa_log_ratio(d_new, d_old, t, theta, j_old, j_new)
    u = rng.random()
    return x >= 0.0 or u < math.exp(x)


@dataclass(frozen=True)
class SaaConfig:
    partition: Partition = field(default_factory=default_partition)
    pi: tuple[float, ...] | None = None
    plateau: int = DEFAULT_PLATEAU
    base_temperature: float = DEFAULT_BASE_TEMPERATURE
    theta_init: tuple[float, ...] | None = None
    # multiplies every gain factor; 0 freezes theta
    gain_scale: float = 1.0

    def __post_init__(self):
        if self.plateau < 1:
            raise ValueError("plateau must be at least 1")
        if self.base_temperature <= 0:
            raise ValueError("base_temperature must be positive")
        nreg = self.partition.n_regions
        if self.pi is not None:
            pi = np.asarray(self.pi, dtype=np.float64)
            if pi.size != nreg or np.any(pi <= 0) or abs(pi.sum() - 1.0) > 1e-12:
                raise ValueError(f"pi must hold {nreg} positive entries summing to 1")
        if self.theta_init is not None and len(self.theta_init) != nreg:
            raise ValueError(f"theta_init must have {nreg} entries")

    @classmethod
    def from_grid(cls, n_regions: int = DEFAULT_REGIONS, a_first: float = DEFAULT_A_FIRST,
                  a_last: float = DEFAULT_A_LAST, thresholds=None, **kwargs) -> "SaaConfig":
        part = Partition(tuple(thresholds)) if thresholds is not None else \
            default_partition(None, n_regions, a_first, a_last)
        return cls(partition=part, **kwargs)

    def pi_array(self) -> np.ndarray:
        if self.pi is None:
            return desired_distribution(self.partition.n_regions)
        return np.asarray(self.pi, dtype=np.float64)

    def theta_array(self) -> np.ndarray:
        if self.theta_init is None:
            return np.zeros(self.partition.n_regions)
        return np.asarray(self.theta_init, dtype=np.float64).copy()

    def temperatures(self, n_iter: int) -> np.ndarray:
        return sqrt_temperature(np.arange(1, n_iter + 1), self.base_temperature, self.plateau)

    def gains(self, n_iter: int) -> np.ndarray:
        return self.gain_scale * gain_factor(np.arange(1, n_iter + 1), self.plateau)
