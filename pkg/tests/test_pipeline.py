import numpy as np
import pytest

from bituner.config import load_config
from bituner.csvio import read_csv
from bituner.forest.dataset import Target
from bituner.graph.generators import SwapSpec, generate_er_swapped
from bituner.heuristics.oracle import grid_search
from bituner.models.features import SampleRecord
from bituner.models.forest import ForestParams
from bituner.models.report import GRID_BEST, TUNED
from bituner.pipeline import (
    build_training_set,
    evaluate_instance,
    graph_sources,
    load_models,
    load_training_csv,
    narrowing_range,
    run_pipeline,
    save_models,
    train_forests,
    tune_graph,
    tuned_params,
)
from tests.conftest import FIXTURES, thresholds

OUTPUTS = ("training.csv", "labels_summary.csv", "predictions.csv", "report.csv", "breakdown.csv",
           "forest_a.json", "forest_b.json", "importance_a.csv", "importance_b.csv")


def small_config(out_dir, **extra):
    values = {
        "synthetic": "20:4",
        "synthetic_count": "3",
        "coverages": "0.5,0.9",
        "thresholds": "fixed:0.5;normal:0.5,0.2",
        "prec": "0.05",
        "trees": "5",
        "seed": "1",
        "out_dir": str(out_dir),
    }
    values.update({k: str(v) for k, v in extra.items()})
    return load_config(overrides=values)


def test_graph_sources_cycle_swap_settings(tmp_path):
    cfg = small_config(tmp_path, synthetic_count=9, swap_factors="0,1,5", swap_biases="none,assortative,disassortative")
    sources = graph_sources(cfg)
    assert len(sources) == 9
    assert [s.swap.factor for s in sources[:3]] == [0.0, 1.0, 5.0]
    assert [s.swap.bias.value for s in sources[::3]] == ["none", "assortative", "disassortative"]
    assert len({s.seed for s in sources}) == 9


def test_training_set_rows(tmp_path):
    training = build_training_set(small_config(tmp_path))
    assert len(training.dataset) == 6
    assert training.skipped == 0
    assert (tmp_path / "training.csv").read_text().splitlines()[0] == ",".join(SampleRecord.columns())
    reloaded = load_training_csv(tmp_path / "training.csv")
    assert reloaded.rows == training.dataset.rows


def test_bad_samples_are_skipped(tmp_path):
    cfg = small_config(tmp_path, synthetic_count=1, graphs=FIXTURES / "path10.edges", sample_size=50)
    training = build_training_set(cfg)
    # the fixture has 11 nodes; the synthetic graph has fewer than 50 as well
    assert training.skipped == 2
    assert len(training.dataset) == 0
    assert "exceeds" in training.errors[0]


@pytest.mark.parametrize("rule", ["first", "center"])
def test_training_labels_are_optima(tmp_path, rule):
    training = build_training_set(small_config(tmp_path, label_rule=rule), write=False)
    for inst in training.instances:
        assert inst.grid.count_at(inst.label) == inst.grid.best_count
        assert (inst.record.best_a, inst.record.best_b) == (inst.label.a, inst.label.b)
        if rule == "first":
            assert inst.label == inst.grid.best


def test_pipeline_outputs_and_invariants(tmp_path):
    report = run_pipeline(small_config(tmp_path))
    for name in OUTPUTS:
        assert (tmp_path / name).is_file(), name

    tuned = report.counts(TUNED)
    best = report.counts(GRID_BEST)
    assert tuned and tuned.keys() == best.keys()
    assert all(best[i] <= tuned[i] for i in tuned)
    assert all(r.fraction_over_best >= 1.0 for r in report.rows)

    for name in ("training.csv", "predictions.csv", "report.csv", "breakdown.csv", "labels_summary.csv"):
        header, rows = read_csv(tmp_path / name)
        assert rows, name
        assert {len(row) for row in rows} == {len(header)}, name


def test_pipeline_is_reproducible(tmp_path):
    run_pipeline(small_config(tmp_path / "one"))
    run_pipeline(small_config(tmp_path / "two"), workers=2)
    for name in OUTPUTS:
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes(), name


def test_tuned_params_snap_onto_the_grid():
    p = tuned_params(0.3, 0.4, 0.01)
    assert (p.a, p.b, p.c) == (0.3, 0.4, 0.3)
    clamped = tuned_params(0.8, 0.6, 0.01)
    assert clamped.c == 0.0
    assert clamped.a + clamped.b == pytest.approx(1.0)
    assert tuned_params(0.0, 0.0, 0.01).as_tuple() == (0.0, 0.0, 1.0)


def test_evaluate_instance_counts():
    g = generate_er_swapped(40, 4, SwapSpec(), 2)
    t = thresholds(g, "normal:0.5,0.1", seed=2)
    grid = grid_search(g, t, 0.8, 0.05)
    counts = evaluate_instance(g, t, 0.8, grid, tuned_params(0.4, 0.4, 0.05))
    assert set(counts) == {TUNED, GRID_BEST, "res", "deg", "RD", "CI-TM"}
    assert all(counts[GRID_BEST] <= n for n in counts.values())
    assert counts[TUNED] == grid.count_at(tuned_params(0.4, 0.4, 0.05))


@pytest.fixture(scope="module")
def forests(tmp_path_factory):
    out = tmp_path_factory.mktemp("models")
    training = build_training_set(small_config(out, synthetic_count=4), write=False)
    trained = train_forests(training.dataset, ForestParams(n_trees=5), 0)
    save_models(trained, out)
    return load_models(out)


def test_saved_models_reload_with_their_targets(forests):
    assert forests[Target.A].target == "a"
    assert forests[Target.B].target == "b"


def test_tune_graph(forests):
    g = generate_er_swapped(200, 5, SwapSpec(), 3)
    result = tune_graph(g, forests, "normal:0.5,0.2", 0.7, samples=5, sample_size=40, seed=0, prec=0.05, apply=True)
    assert len(result.per_sample) == 5
    assert result.mean_a == pytest.approx(np.mean([a for a, _ in result.per_sample]))
    assert result.params.a + result.params.b + result.params.c == pytest.approx(1.0)
    assert result.initiators is not None and result.initiators >= 1
    again = tune_graph(g, forests, "normal:0.5,0.2", 0.7, samples=5, sample_size=40, seed=0, prec=0.05)
    assert again.per_sample == result.per_sample
    assert again.initiators is None


def test_narrowing_range(forests):
    g = generate_er_swapped(150, 5, SwapSpec(), 4)
    table = narrowing_range(g, forests, "fixed:0.5", 0.5, sizes=[20, 40], samples=3, seeds=range(3))
    assert [row[0] for row in table] == [20, 40]
    assert all(row[1] == 3 and row[3] >= 0.0 and row[5] >= 0.0 for row in table)
