"""
Long-running checks on the synthetic ER family. Deselected by default; run with `pytest -m slow`.
"""

import numpy as np
import pytest

from bituner.config import Settings, load_config
from bituner.csvio import read_csv
from bituner.forest.dataset import Target
from bituner.forest.forest import ranked_importance
from bituner.graph.generators import SwapSpec, generate_er_swapped
from bituner.models.report import TUNED
from bituner.pipeline import load_models, load_training_csv, narrowing_range, run_pipeline, train_forests

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def synthetic_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("synthetic")
    cfg = load_config(overrides={
        "synthetic": "100:5,100:10",
        "synthetic_count": "75",
        "coverages": "0.5,0.7,0.9",
        "prec": "0.02",
        "seed": "0",
        "out_dir": str(out),
    })
    report = run_pipeline(cfg, Settings().workers)
    return cfg, report


def test_prediction_error_within_two_tenths(synthetic_run):
    cfg, _ = synthetic_run
    _, rows = read_csv(cfg.out_dir / "predictions.csv")
    close = [abs(float(a_hat) - float(a)) <= 0.2 + 1e-9 and abs(float(b_hat) - float(b)) <= 0.2 + 1e-9
             for _, a_hat, b_hat, a, b in rows]
    assert len(rows) == 150
    assert np.mean(close) >= 0.75


def test_tuned_bi_is_competitive(synthetic_run):
    _, report = synthetic_run
    tuned = report.summary(TUNED)
    for name in ("res", "deg", "RD"):
        assert tuned.mean_initiators <= report.summary(name).mean_initiators, name
    assert tuned.mean_fraction_over_best <= 1.15


def test_threshold_spread_ranks_first(synthetic_run):
    cfg, _ = synthetic_run
    dataset = load_training_csv(cfg.out_dir / "training.csv", cfg.bin_width)
    # importance is read at a single coverage, cov=0.9
    dataset = dataset.subset([i for i, r in enumerate(dataset.rows) if abs(r.features.cov - 0.9) < 1e-9])
    assert len(dataset) > 0
    firsts = {Target.A: 0, Target.B: 0}
    for seed in range(3):
        for target, forest in train_forests(dataset, cfg.forest_params, seed, Settings().workers).items():
            name, share, _ = ranked_importance(forest)[0]
            firsts[target] += name == "phi_std"
            print(f"seed {seed} target {target.value}: top feature {name} ({share:.2f})")
    assert firsts[Target.A] >= 2
    assert firsts[Target.B] >= 2


def test_prediction_spread_narrows_with_sample_size(synthetic_run):
    cfg, _ = synthetic_run
    forests = load_models(cfg.out_dir)
    parent = generate_er_swapped(5000, 10, SwapSpec(), 11)
    table = narrowing_range(parent, forests, "normal:0.5,0.2", 0.9, sizes=[100, 250, 500], samples=30,
                            seeds=range(10))
    spreads = [row[3] for row in table]
    for smaller, larger in zip(spreads, spreads[1:]):
        assert larger <= 1.1 * smaller + 1e-12
