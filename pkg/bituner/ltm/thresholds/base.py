from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from bituner.graph.core import Graph

# resistance of a node with no in-neighbors: it can only ever be activated as a seed
UNREACHABLE = -1

# keeps products such as 0.3 * 10 from rounding up to the next integer
_CEIL_SLACK = 1e-9


class ThresholdDistribution(ABC):
    @property
    @abstractmethod
    def descriptor(self) -> str:
        """Round-trippable `name:params` form, as accepted by get_threshold_distribution."""

    @abstractmethod
    def sample(self, size: int, rng: np.random.Generator) -> np.ndarray:
        """
        Draw fractional thresholds.

        :param size: number of nodes
        :param rng: generator owned by the caller
        :return: float array with every value in (0, 1]
        """

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.descriptor})"


@dataclass(frozen=True, eq=False)
class ThresholdAssignment:
    phi: np.ndarray
    resistance: np.ndarray
    descriptor: str = ""

    @property
    def node_count(self) -> int:
        return len(self.phi)


def resistances(g: Graph, phi: np.ndarray) -> np.ndarray:
    k_in = g.in_degree
    r = np.maximum(1, np.ceil(phi * k_in - _CEIL_SLACK)).astype(np.int64)
    r[k_in == 0] = UNREACHABLE
    return r


def assign_thresholds(g: Graph, distribution: ThresholdDistribution, rng_seed: int) -> ThresholdAssignment:
    rng = np.random.default_rng(rng_seed)
    phi = distribution.sample(g.node_count, rng)
    r = resistances(g, phi)
    phi.flags.writeable = False
    r.flags.writeable = False
    return ThresholdAssignment(phi=phi, resistance=r, descriptor=distribution.descriptor)
