import numpy as np
import pytest

from bituner.errors import GridError, OracleError
from bituner.graph.core import Graph
from bituner.graph.generators import SwapSpec, generate_er_swapped
from bituner.heuristics.balanced_index import select_initiators
from bituner.heuristics.oracle import (
    GridResult,
    LabelRule,
    brute_force_min_seeds,
    central_optimum,
    grid_search,
    grid_search_coverages,
    snap_to_grid,
    triangle_grid,
)
from bituner.heuristics.presets import all_presets
from bituner.models.params import BIParams
from tests.conftest import random_small_graph, thresholds


def test_grid_geometry():
    grid = triangle_grid(0.01)
    assert len(grid) == 2601
    points = {(p.a, p.b) for p in grid}
    assert len(points) == 2601
    for p in all_presets().values():
        assert (p.a, p.b) in points
    assert all(abs(p.a + p.b + p.c - 1.0) < 1e-12 and p.c >= 0.0 for p in grid)
    assert [(p.a, p.b) for p in grid] == sorted(points)


def test_coarse_grid():
    assert [(p.a, p.b) for p in triangle_grid(0.5)] == [(0.0, 0.0), (0.0, 0.5), (0.0, 1.0), (1.0, 0.0)]
    assert len(triangle_grid(0.1)) == 36


@pytest.mark.parametrize("prec", [0.0, 0.3, 0.6, -0.1])
def test_bad_precision(prec):
    with pytest.raises(GridError):
        triangle_grid(prec)


def test_snap_to_grid():
    for p in all_presets().values():
        assert snap_to_grid(p, 0.01) == p
    snapped = snap_to_grid(BIParams(a=0.33, b=0.33, c=0.34), 0.1)
    assert (snapped.a, snapped.b) == (0.4, 0.3)
    edge = snap_to_grid(BIParams.normalized(0.8, 0.6, 0.0), 0.01)
    assert edge.c == 0.0


def test_triangle_pendant_grid(triangle_pendant):
    result = grid_search(triangle_pendant, thresholds(triangle_pendant), 1.0, 0.5)
    assert result.best_count == 1
    assert set(result.surface.values()) == {1}
    assert result.best.as_tuple() == (0.0, 0.0, 1.0)


def test_symmetric_graph_ties_go_to_origin(cycle6):
    result = grid_search(cycle6, thresholds(cycle6), 0.9, 0.1)
    assert len(set(result.surface.values())) == 1
    assert (result.best.a, result.best.b) == (0.0, 0.0)


def test_single_node():
    g = Graph.from_arcs(1, [])
    result = grid_search(g, thresholds(g), 1.0, 0.1)
    assert result.best_count == 1
    assert set(result.surface.values()) == {1}


def test_surface_rows():
    g = generate_er_swapped(40, 4, SwapSpec(), 0)
    result = grid_search(g, thresholds(g), 0.7, 0.1)
    rows = result.rows()
    assert len(rows) == 36
    assert all(n >= result.best_count for *_, n in rows)
    assert min(n for *_, n in rows) == result.best_count
    assert all(c >= 0.0 for _, _, c, _ in rows)
    assert result.count_at(result.best) == result.best_count


def test_one_sweep_matches_separate_searches():
    g = generate_er_swapped(50, 5, SwapSpec(), 7)
    t = thresholds(g, "normal:0.5,0.2", seed=7)
    swept = grid_search_coverages(g, t, [0.5, 0.9], 0.1)
    for cov in (0.5, 0.9):
        alone = grid_search(g, t, cov, 0.1)
        assert swept[cov].surface == alone.surface
        assert swept[cov].best == alone.best


def test_parallel_grid_matches_sequential():
    g = generate_er_swapped(50, 5, SwapSpec(), 8)
    t = thresholds(g, "uniform:0.3,0.7", seed=8)
    assert grid_search(g, t, 0.8, 0.1, workers=2) == grid_search(g, t, 0.8, 0.1, workers=1)


def test_brute_force(triangle_pendant, directed_path):
    assert brute_force_min_seeds(triangle_pendant, thresholds(triangle_pendant), 1.0) == frozenset({0})
    isolated = Graph.from_arcs(2, [])
    assert brute_force_min_seeds(isolated, thresholds(isolated), 1.0) == frozenset({0, 1})
    assert brute_force_min_seeds(directed_path, thresholds(directed_path), 1.0) == frozenset({0})


def test_brute_force_refuses_large_graphs():
    g = Graph.from_arcs(20, [(i, i + 1) for i in range(19)])
    with pytest.raises(OracleError):
        brute_force_min_seeds(g, thresholds(g), 0.5)


def test_oracle_lower_bound_on_small_graphs():
    rng = np.random.default_rng(7)
    for _ in range(50):
        g = random_small_graph(rng)
        descriptor = "fixed:0.5" if rng.random() < 0.5 else "uniform:0.2,1"
        t = thresholds(g, descriptor, seed=int(rng.integers(1000)))
        cov = float(rng.choice([0.5, 0.75, 1.0]))

        optimum = len(brute_force_min_seeds(g, t, cov))
        result = grid_search(g, t, cov, 0.05)
        assert min(result.surface.values()) >= optimum
        for p in all_presets().values():
            count = select_initiators(g, t, p, cov).initiators
            assert count >= optimum
            assert result.best_count <= count


def flat_result(prec: float, count: int = 7, **overrides) -> GridResult:
    surface = {(p.a, p.b): count for p in triangle_grid(prec)}
    surface.update(overrides.pop("points", {}))
    best_count = min(surface.values())
    best = next(p for p in triangle_grid(prec) if surface[(p.a, p.b)] == best_count)
    return GridResult(surface=surface, best=best, best_count=best_count, cov=0.9, prec=prec)


def test_central_optimum_of_a_flat_surface():
    result = flat_result(0.1)
    assert (result.best.a, result.best.b) == (0.0, 0.0)
    assert central_optimum(result).as_tuple() == (0.4, 0.3, 0.3)


def test_central_optimum_prefers_the_wider_basin():
    # (0, 0) is an isolated optimum; (0.4, 0.2) sits between two near-optimal points
    result = flat_result(0.1, count=6, points={(0.0, 0.0): 3, (0.4, 0.2): 3, (0.4, 0.1): 4, (0.4, 0.3): 4})
    assert (result.best.a, result.best.b) == (0.0, 0.0)
    center = central_optimum(result)
    assert (center.a, center.b) == (0.4, 0.2)
    assert result.count_at(center) == result.best_count


def test_label_rules():
    result = flat_result(0.1, count=6, points={(0.0, 0.0): 3, (0.4, 0.2): 3, (0.4, 0.1): 4, (0.4, 0.3): 4})
    assert result.label() == result.best
    assert result.label(LabelRule.FIRST) == result.best
    assert (result.label("center").a, result.label("center").b) == (0.4, 0.2)
    with pytest.raises(ValueError):
        result.label("middle")


def test_central_optimum_is_always_optimal():
    for seed in range(5):
        g = generate_er_swapped(30, 4, SwapSpec(), seed)
        result = grid_search(g, thresholds(g, "normal:0.5,0.2", seed), 0.7, 0.05)
        center = central_optimum(result)
        assert result.count_at(center) == result.best_count
        assert center in triangle_grid(0.05)
