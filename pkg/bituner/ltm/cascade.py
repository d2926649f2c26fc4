"""
Linear Threshold cascade

A node turns active once the number of its active in-neighbors reaches its integer resistance.
Activation is permanent, so the process is monotone and its fixed point does not depend on the
order in which nodes are examined.
"""

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from bituner.errors import CoverageError, GraphError
from bituner.graph.core import Graph, NodeSet
from bituner.ltm.thresholds import UNREACHABLE, ThresholdAssignment


@dataclass(frozen=True)
class CascadeResult:
    active: NodeSet
    activation_order: tuple[int, ...]
    coverage: float


def required_active(cov: float, node_count: int) -> int:
    """Smallest active count that reaches coverage cov on node_count nodes."""
    if not 0.0 < cov <= 1.0:
        raise CoverageError(f"coverage must lie in (0, 1], got {cov}")
    return max(1, int(np.ceil(cov * node_count - 1e-9)))


def _validated_seeds(g: Graph, seeds: Iterable[int]) -> list[int]:
    ordered = sorted({int(s) for s in seeds})
    if not ordered:
        raise GraphError("a cascade needs at least one seed")
    if ordered[0] < 0 or ordered[-1] >= g.node_count:
        raise GraphError(f"seed outside [0, {g.node_count})")
    return ordered


def run_cascade(g: Graph, t: ThresholdAssignment, seeds: Iterable[int]) -> CascadeResult:
    """Queue-based propagation: every newly active node re-checks its out-neighbors."""
    ordered = _validated_seeds(g, seeds)
    resistance = t.resistance
    active = np.zeros(g.node_count, dtype=bool)
    pressure = np.zeros(g.node_count, dtype=np.int64)

    order = list(ordered)
    active[ordered] = True
    queue = deque(ordered)
    while queue:
        u = queue.popleft()
        for v in g.out_neighbors(u).tolist():
            if active[v]:
                continue
            pressure[v] += 1
            if resistance[v] != UNREACHABLE and pressure[v] >= resistance[v]:
                active[v] = True
                order.append(v)
                queue.append(v)

    return CascadeResult(
        active=frozenset(order),
        activation_order=tuple(order),
        coverage=len(order) / g.node_count,
    )


def run_cascade_synchronous(g: Graph, t: ThresholdAssignment, seeds: Iterable[int]) -> CascadeResult:
    """Round-based propagation: all nodes over threshold in a round activate together."""
    ordered = _validated_seeds(g, seeds)
    src, dst = g.arcs()
    reachable = t.resistance != UNREACHABLE

    active = np.zeros(g.node_count, dtype=bool)
    active[ordered] = True
    order = list(ordered)
    while True:
        pressure = np.bincount(dst[active[src]], minlength=g.node_count)
        fresh = np.flatnonzero(~active & reachable & (pressure >= t.resistance))
        if fresh.size == 0:
            break
        active[fresh] = True
        order.extend(fresh.tolist())

    return CascadeResult(
        active=frozenset(order),
        activation_order=tuple(order),
        coverage=len(order) / g.node_count,
    )
