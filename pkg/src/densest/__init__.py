"""Monte Carlo search for the densest k-node subgraph (SM, SA and SAA chains)."""

from ._jit import USING_NUMBA, backend
from .errors import EnumerationCapError, InstanceInfeasibleError, InvalidSelectionError
from .generators import PlantedInstance, erdos_renyi, plant_clique, planted_instance
from .graph import (
    Graph,
    edge_density,
    is_connected,
    neighbors_of_set,
    non_articulation_nodes,
    pairwise_distance_sum,
)
from .saa import Partition, SaaConfig, default_partition
from .samplers import ChainState, SamplerConfig, Trace, run_chain

__version__ = "0.1.0"

__all__ = [
    "USING_NUMBA",
    "backend",
    "ChainState",
    "EnumerationCapError",
    "Graph",
    "InstanceInfeasibleError",
    "InvalidSelectionError",
    "Partition",
    "PlantedInstance",
    "SaaConfig",
    "SamplerConfig",
    "Trace",
    "default_partition",
    "edge_density",
    "erdos_renyi",
    "is_connected",
    "neighbors_of_set",
    "non_articulation_nodes",
    "pairwise_distance_sum",
    "plant_clique",
    "planted_instance",
    "run_chain",
]
