"""
Random-walk subgraph sampling

One walk on the undirected view collects distinct nodes until the target size is reached; the
sample is the subgraph of the original (directed) graph induced by those nodes.
"""

import logging
from dataclasses import dataclass

import numpy as np

from bituner.errors import SamplingError
from bituner.graph.core import Graph, induced_subgraph, undirected_view

logger = logging.getLogger(__name__)

MAX_ABANDONED_WALKS = 10


@dataclass(frozen=True)
class SampleSpec:
    target_size: int
    rng_seed: int
    max_steps_factor: int = 100

    def __post_init__(self):
        if self.target_size < 2:
            raise SamplingError(f"target_size must be >= 2, got {self.target_size}")
        if self.max_steps_factor < 1:
            raise SamplingError(f"max_steps_factor must be >= 1, got {self.max_steps_factor}")


def _walk(view: Graph, target_size: int, max_steps: int, rng: np.random.Generator) -> list[int] | None:
    current = int(rng.integers(view.node_count))
    visited = {current: None}  # insertion-ordered set
    for _ in range(max_steps):
        if len(visited) >= target_size:
            break
        neighbors = view.out_neighbors(current)
        if neighbors.size == 0:
            return None
        current = int(neighbors[rng.integers(neighbors.size)])
        visited.setdefault(current, None)
    return list(visited) if len(visited) >= target_size else None


def random_walk_sample(g: Graph, spec: SampleSpec) -> Graph:
    if spec.target_size > g.node_count:
        raise SamplingError(f"target_size {spec.target_size} exceeds the graph's {g.node_count} nodes")

    view = undirected_view(g)
    max_steps = spec.max_steps_factor * spec.target_size
    walk_seeds = np.random.SeedSequence(spec.rng_seed).spawn(MAX_ABANDONED_WALKS)
    for attempt, walk_seed in enumerate(walk_seeds, start=1):
        nodes = _walk(view, spec.target_size, max_steps, np.random.default_rng(walk_seed))
        if nodes is not None:
            return induced_subgraph(g, nodes)
        logger.warning(f"Walk {attempt} stalled before reaching {spec.target_size} nodes, restarting")

    raise SamplingError(
        f"no walk reached {spec.target_size} distinct nodes in {MAX_ABANDONED_WALKS} attempts; "
        "the component is too small or the graph too fragmented"
    )
