"""
Balanced Index seed selection

BI_i = a * r_i + b * k_out_i + c * sum over out-neighbors j with r_j = 1 of (k_out_j - 1)

evaluated on the residual state of the cascade: resistances drop as in-neighbors turn active and
out-degrees only count inactive out-neighbors. The index is recomputed after every pick.
"""

import logging
from dataclasses import dataclass

import numpy as np

from bituner.errors import CoverageError
from bituner.graph.core import Graph
from bituner.ltm.cascade import CascadeResult, required_active
from bituner.ltm.thresholds import UNREACHABLE, ThresholdAssignment
from bituner.models.params import BIParams

logger = logging.getLogger(__name__)


class ResidualState:
    """Mutable cascade state owned by a single selection run."""

    def __init__(self, g: Graph, t: ThresholdAssignment):
        if t.node_count != g.node_count:
            raise ValueError(f"threshold assignment covers {t.node_count} nodes, graph has {g.node_count}")
        self.g = g
        self._resistance = t.resistance
        self._pressure = np.zeros(g.node_count, dtype=np.int64)
        self.active = np.zeros(g.node_count, dtype=bool)
        self.residual_resistance = t.resistance.copy()
        self.residual_out_degree = g.out_degree.copy()
        self.activation_order: list[int] = []

    @property
    def active_count(self) -> int:
        return len(self.activation_order)

    def _mark(self, node: int) -> None:
        self.active[node] = True
        self.activation_order.append(node)
        self.residual_out_degree[self.g.in_neighbors(node)] -= 1

    def activate(self, seed: int) -> int:
        """Seed a node and propagate; returns how many nodes turned active."""
        if self.active[seed]:
            raise ValueError(f"node {seed} is already active")
        before = self.active_count
        self._mark(seed)
        queue = [seed]
        while queue:
            u = queue.pop()
            for v in self.g.out_neighbors(u).tolist():
                if self.active[v]:
                    continue
                self._pressure[v] += 1
                r = self._resistance[v]
                if r == UNREACHABLE:
                    continue
                self.residual_resistance[v] = max(0, r - self._pressure[v])
                if self._pressure[v] >= r:
                    self._mark(v)
                    queue.append(v)
        return self.active_count - before

    def cascade_result(self) -> CascadeResult:
        return CascadeResult(
            active=frozenset(self.activation_order),
            activation_order=tuple(self.activation_order),
            coverage=self.active_count / self.g.node_count,
        )


def bi_scores(g: Graph, s: ResidualState, p: BIParams) -> np.ndarray:
    """Index of every node; active nodes get -inf so they are never picked."""
    rr = s.residual_resistance
    inactive = ~s.active
    k_out = s.residual_out_degree.astype(np.float64)

    # unreachable nodes need no peer pressure once seeded
    resistance_term = np.where(rr == UNREACHABLE, 0, rr).astype(np.float64)
    ready = np.where(inactive & (rr == 1), k_out - 1.0, 0.0)
    src, dst = g.arcs()
    ready_term = np.bincount(src, weights=ready[dst], minlength=g.node_count)

    scores = p.a * resistance_term + p.b * k_out + p.c * ready_term
    scores[s.active] = -np.inf
    return scores


@dataclass(frozen=True)
class Selection:
    seeds: tuple[int, ...]
    cascade: CascadeResult
    # active node count right after each pick
    trace: tuple[int, ...]
    node_count: int

    @property
    def initiators(self) -> int:
        return len(self.seeds)

    def initiators_for(self, cov: float) -> int:
        """Seeds needed for coverage cov, read off the trace of a run that reached it."""
        need = required_active(cov, self.node_count)
        for picks, count in enumerate(self.trace, start=1):
            if count >= need:
                return picks
        raise CoverageError(f"selection stopped at {self.trace[-1]} active nodes, coverage {cov} needs {need}")


def greedy_selection(g: Graph, t: ThresholdAssignment, p: BIParams, stop_count: int) -> Selection:
    state = ResidualState(g, t)
    seeds: list[int] = []
    trace: list[int] = []
    while state.active_count < stop_count:
        pick = int(np.argmax(bi_scores(g, state, p)))  # lowest id among ties
        seeds.append(pick)
        state.activate(pick)
        trace.append(state.active_count)
        logger.debug(f"pick {pick} -> {state.active_count}/{g.node_count} active")
    return Selection(seeds=tuple(seeds), cascade=state.cascade_result(), trace=tuple(trace), node_count=g.node_count)


def select_initiators(g: Graph, t: ThresholdAssignment, p: BIParams, cov: float) -> Selection:
    """Adaptive greedy: seed the top-index inactive node, propagate, repeat until coverage cov."""
    return greedy_selection(g, t, p, required_active(cov, g.node_count))
