"""
Exhaustive searches used as ground truth

triangle_grid / grid_search label an instance with the simplex point that needs the fewest
initiators. brute_force_min_seeds enumerates seed sets and is only meant for tiny test graphs.
"""

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from bituner.errors import GridError, OracleError
from bituner.graph.core import Graph, NodeSet
from bituner.heuristics.balanced_index import greedy_selection
from bituner.ltm.cascade import required_active, run_cascade
from bituner.ltm.thresholds import ThresholdAssignment
from bituner.models.params import BIParams

logger = logging.getLogger(__name__)

SURFACE_COLUMNS = ("a", "b", "c", "initiators")

# half-width in (a, b) of the neighbourhood that ranks tied optima
LABEL_RADIUS = 0.1


class LabelRule(str, Enum):
    FIRST = "first"
    CENTER = "center"


def grid_steps(prec: float) -> int:
    if not 0.0 < prec <= 0.5:
        raise GridError(f"grid precision must lie in (0, 0.5], got {prec}")
    steps = round(1.0 / prec)
    if abs(steps * prec - 1.0) > 1e-9:
        raise GridError(f"1/prec must be an integer, got prec={prec}")
    return steps


def grid_point(i: int, j: int, steps: int) -> BIParams:
    """a = 2i/steps, b = j/steps; built from integers so equal points are equal floats."""
    return BIParams(a=2 * i / steps, b=j / steps, c=(steps - 2 * i - j) / steps)


def triangle_grid(prec: float) -> list[BIParams]:
    """Feasible points of the simplex grid with a-step 2*prec and b-step prec, in (a, b) order."""
    steps = grid_steps(prec)
    return [grid_point(i, j, steps) for i in range(steps // 2 + 1) for j in range(steps - 2 * i + 1)]


def snap_to_grid(p: BIParams, prec: float) -> BIParams:
    """Nearest grid point; b gives way when rounding would leave the simplex."""
    steps = grid_steps(prec)
    i = min(int(np.floor(p.a * steps / 2 + 0.5)), steps // 2)
    j = min(int(np.floor(p.b * steps + 0.5)), steps - 2 * i)
    return grid_point(i, j, steps)


@dataclass(frozen=True)
class GridResult:
    surface: dict[tuple[float, float], int]
    best: BIParams
    best_count: int
    cov: float
    prec: float

    def rows(self) -> list[tuple[float, float, float, int]]:
        return [(a, b, round(1.0 - a - b, 12) + 0.0, n) for (a, b), n in self.surface.items()]

    def count_at(self, p: BIParams) -> Optional[int]:
        return self.surface.get((p.a, p.b))

    def label(self, rule: LabelRule | str = LabelRule.FIRST) -> BIParams:
        """Training target: the tie-broken best, or the central optimum."""
        return self.best if LabelRule(rule) == LabelRule.FIRST else central_optimum(self)


def _box_sum(values: np.ndarray, reach_i: int, reach_j: int) -> np.ndarray:
    """Sum over the window |di| <= reach_i, |dj| <= reach_j around every cell, clipped at the edges."""
    rows, cols = values.shape
    table = np.zeros((rows + 1, cols + 1))
    table[1:, 1:] = values.cumsum(axis=0).cumsum(axis=1)
    lo_i = np.clip(np.arange(rows) - reach_i, 0, rows)
    hi_i = np.clip(np.arange(rows) + reach_i + 1, 0, rows)
    lo_j = np.clip(np.arange(cols) - reach_j, 0, cols)
    hi_j = np.clip(np.arange(cols) + reach_j + 1, 0, cols)
    return (table[np.ix_(hi_i, hi_j)] - table[np.ix_(lo_i, hi_j)]
            - table[np.ix_(hi_i, lo_j)] + table[np.ix_(lo_i, lo_j)])


def central_optimum(result: GridResult, radius: float = LABEL_RADIUS) -> BIParams:
    """
    The optimal grid point lying deepest inside a low part of the surface.

    Among the points that reach best_count, the winner has the lowest mean initiator count over the
    grid points within radius of it in both a and b. Remaining ties go to the point nearest the
    mean of all optimal points, then to (a, b) order.
    """
    steps = grid_steps(result.prec)
    counts = np.zeros((steps // 2 + 1, steps + 1))
    present = np.zeros_like(counts)
    for (a, b), n in result.surface.items():
        i, j = int(round(a * steps / 2)), int(round(b * steps))
        counts[i, j] = n
        present[i, j] = 1.0

    reach_i = int(math.floor(radius * steps / 2 + 1e-9))
    reach_j = int(math.floor(radius * steps + 1e-9))
    neighbourhood = _box_sum(counts, reach_i, reach_j) / np.maximum(_box_sum(present, reach_i, reach_j), 1.0)

    optimal = [tuple(ij) for ij in np.argwhere((present > 0) & (counts == result.best_count)).tolist()]
    center_i = sum(i for i, _ in optimal) / len(optimal)
    center_j = sum(j for _, j in optimal) / len(optimal)

    def rank(ij: tuple[int, int]) -> tuple:
        i, j = ij
        # one a-step spans two b-steps
        return neighbourhood[i, j], (2 * (i - center_i)) ** 2 + (j - center_j) ** 2, i, j

    return grid_point(*min(optimal, key=rank), steps)


def _sweep_point(args: tuple[Graph, ThresholdAssignment, BIParams, int, tuple[float, ...]]) -> tuple[int, ...]:
    g, t, p, stop_count, coverages = args
    return tuple(greedy_selection(g, t, p, stop_count).initiators_for(cov) for cov in coverages)


def grid_search_coverages(g: Graph, t: ThresholdAssignment, coverages: Sequence[float], prec: float,
                          workers: int = 1) -> dict[float, GridResult]:
    """
    Label one instance for several coverages from a single sweep of the grid.

    The greedy run is the same for every target coverage up to its stopping point, so each grid
    point is run once up to the largest coverage and the trace is read at every smaller one.
    """
    if not coverages:
        raise GridError("at least one coverage is required")
    grid = triangle_grid(prec)
    needs = tuple(required_active(cov, g.node_count) for cov in coverages)
    stop_count = max(needs)
    jobs = [(g, t, p, stop_count, tuple(coverages)) for p in grid]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_sweep_point, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_sweep_point(job) for job in jobs]

    labeled = {}
    for k, cov in enumerate(coverages):
        surface = {(p.a, p.b): counts[k] for p, counts in zip(grid, results)}
        # first minimum in (a, b) order: smallest a, then smallest b
        best_index = min(range(len(grid)), key=lambda idx: results[idx][k])
        labeled[cov] = GridResult(surface=surface, best=grid[best_index], best_count=results[best_index][k],
                                  cov=cov, prec=prec)
        logger.debug(f"cov={cov}: best {grid[best_index]} with {results[best_index][k]} initiators")
    return labeled


def grid_search(g: Graph, t: ThresholdAssignment, cov: float, prec: float, workers: int = 1) -> GridResult:
    return grid_search_coverages(g, t, [cov], prec, workers)[cov]


def brute_force_min_seeds(g: Graph, t: ThresholdAssignment, cov: float, max_n: int = 15) -> NodeSet:
    """Smallest seed set reaching coverage cov, by enumerating subsets in increasing size."""
    if g.node_count > max_n:
        raise OracleError(f"refusing exhaustive search on {g.node_count} nodes (limit {max_n})")
    need = required_active(cov, g.node_count)
    nodes: Iterable[int] = range(g.node_count)
    for size in range(1, g.node_count + 1):
        for seeds in itertools.combinations(nodes, size):
            if len(run_cascade(g, t, seeds).active) >= need:
                return frozenset(seeds)
    raise OracleError("no seed set reaches the coverage")  # unreachable: seeding every node covers all
