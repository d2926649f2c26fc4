"""
Experiment pipeline

sample -> assign thresholds -> extract features -> grid-label -> train -> predict -> evaluate.

Work items are (graph source, sample index) pairs. Each item derives its random streams from
(master seed, source index, sample index), and results are collected in item order, so outputs do
not depend on how many worker processes run them.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Optional, Sequence

import numpy as np
from tqdm import tqdm

from bituner.config import ExperimentConfig
from bituner.csvio import read_csv, write_csv
from bituner.errors import BITuneError
from bituner.forest.dataset import Dataset, Target, split_indices
from bituner.forest.forest import RandomForest, load_forest, predict, ranked_importance, save_forest, train
from bituner.graph.core import Graph, load_edge_list
from bituner.graph.features import extract_features
from bituner.graph.generators import SwapSpec, generate_er_swapped
from bituner.graph.sampler import SampleSpec, random_walk_sample
from bituner.heuristics.balanced_index import select_initiators
from bituner.heuristics.oracle import GridResult, LabelRule, grid_search, grid_search_coverages, snap_to_grid
from bituner.heuristics.presets import all_presets
from bituner.logs import progress_disabled
from bituner.ltm.thresholds import ThresholdAssignment, assign_thresholds, get_threshold_distribution
from bituner.models.features import FEATURE_NAMES, FeatureVector, SampleRecord
from bituner.models.forest import ForestParams
from bituner.models.params import BIParams
from bituner.models.report import GRID_BEST, REPORT_COLUMNS, TUNED, EvaluationReport
from bituner.reporting import (
    BREAKDOWN_COLUMNS,
    LABEL_SUMMARY_COLUMNS,
    InstanceEvaluation,
    breakdown,
    build_report,
    label_summary,
)
from bituner.seeding import derive_seed

logger = logging.getLogger(__name__)

PREDICTION_COLUMNS = ("row_id", "a_hat", "b_hat", "a_star", "b_star")
IMPORTANCE_COLUMNS = ("rank", "feature", "share", "cumulative")
NARROWING_COLUMNS = ("target_size", "seeds", "mean_a", "std_a", "mean_b", "std_b")

# sub-stream tags mixed into derived seeds
_SOURCE, _SAMPLE, _THRESHOLDS, _SPLIT, _FOREST = range(5)


@dataclass(frozen=True)
class GraphSource:
    name: str
    path: Optional[Path] = None
    directed: bool = False
    n: int = 0
    k: float = 0.0
    swap: SwapSpec = SwapSpec()
    seed: int = 0

    def load(self) -> Graph:
        return _load_source(self)

    def _build(self) -> Graph:
        if self.path is not None:
            with self.path.open("rb") as handle:
                return load_edge_list(handle, self.directed)
        return generate_er_swapped(self.n, self.k, self.swap, self.seed)


@lru_cache(maxsize=4)
def _load_source(source: GraphSource) -> Graph:
    # parents are reused by every sample taken from them within a process
    return source._build()


@dataclass
class Instance:
    """One labeled (sample, coverage) case, kept in memory for evaluation."""

    instance_id: str
    graph: Graph
    thresholds: ThresholdAssignment
    features: FeatureVector
    grid: GridResult
    label: BIParams

    @property
    def record(self) -> SampleRecord:
        return SampleRecord(features=self.features, best_a=self.label.a, best_b=self.label.b,
                            best_count=self.grid.best_count)


@dataclass
class TrainingSet:
    dataset: Dataset
    instances: list[Instance]
    skipped: int = 0
    errors: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class _Item:
    source_index: int
    source: GraphSource
    sample_index: int
    threshold: str
    sample_size: int
    coverages: tuple[float, ...]
    prec: float
    master_seed: int
    label_rule: LabelRule = LabelRule.FIRST


def graph_sources(cfg: ExperimentConfig) -> list[GraphSource]:
    sources = [GraphSource(name=path.stem, path=path, directed=cfg.directed) for path in cfg.graphs]
    for pair in cfg.synthetic:
        n, _, k = pair.partition(":")
        for idx in range(cfg.synthetic_count):
            factor = cfg.swap_factors[idx % len(cfg.swap_factors)]
            bias = cfg.swap_biases[(idx // len(cfg.swap_factors)) % len(cfg.swap_biases)]
            sources.append(GraphSource(
                name=f"er{n}k{k}-{idx:03d}",
                n=int(n),
                k=float(k),
                swap=SwapSpec(bias=bias, factor=factor),
                seed=derive_seed(cfg.seed, _SOURCE, len(sources)),
            ))
    return sources


def _work_items(cfg: ExperimentConfig, sources: Sequence[GraphSource]) -> list[_Item]:
    items = []
    for s_index, source in enumerate(sources):
        for sample_index in range(cfg.samples_per_graph):
            threshold = cfg.thresholds[len(items) % len(cfg.thresholds)]
            items.append(_Item(s_index, source, sample_index, threshold, cfg.sample_size,
                               tuple(cfg.coverages), cfg.prec, cfg.seed, cfg.label_rule))
    return items


def label_item(item: _Item) -> list[Instance] | str:
    """Sample, threshold and grid-label one work item; returns an error message on failure."""
    try:
        parent = item.source.load()
        if item.sample_size and item.sample_size < parent.node_count:
            spec = SampleSpec(item.sample_size, derive_seed(item.master_seed, _SAMPLE, item.source_index, item.sample_index))
            graph = random_walk_sample(parent, spec)
        elif item.sample_size > parent.node_count:
            raise BITuneError(f"sample_size {item.sample_size} exceeds {parent.node_count} nodes")
        else:
            graph = parent

        t = assign_thresholds(graph, get_threshold_distribution(item.threshold),
                              derive_seed(item.master_seed, _THRESHOLDS, item.source_index, item.sample_index))
        labeled = grid_search_coverages(graph, t, item.coverages, item.prec)
        return [
            Instance(
                instance_id=f"{item.source.name}#{item.sample_index}@{cov:g}",
                graph=graph,
                thresholds=t,
                features=extract_features(graph, t, cov),
                grid=labeled[cov],
                label=labeled[cov].label(item.label_rule),
            )
            for cov in item.coverages
        ]
    except BITuneError as e:
        return f"{item.source.name}#{item.sample_index}: {e}"


def _run_items(items: Sequence[_Item], workers: int) -> Iterator[list[Instance] | str]:
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            yield from executor.map(label_item, items)
    else:
        yield from map(label_item, items)


def build_training_set(cfg: ExperimentConfig, workers: int = 1, write: bool = True) -> TrainingSet:
    sources = graph_sources(cfg)
    items = _work_items(cfg, sources)
    logger.info(f"Labeling {len(items)} samples from {len(sources)} graphs "
                f"({len(cfg.coverages)} coverages, prec={cfg.prec}, {workers} workers)")

    instances: list[Instance] = []
    errors: list[str] = []
    outcomes = tqdm(_run_items(items, workers), total=len(items), desc="labeling",
                    disable=progress_disabled(logger))
    for outcome in outcomes:
        if isinstance(outcome, str):
            logger.warning(f"Skipping {outcome}")
            errors.append(outcome)
        else:
            instances.extend(outcome)

    dataset = Dataset([inst.record for inst in instances], bin_width=cfg.bin_width)
    if write:
        path = cfg.out_dir / "training.csv"
        write_csv(path, SampleRecord.columns(), (r.as_row() for r in dataset.rows))
        logger.info(f"Wrote {len(dataset)} rows to {path} ({len(errors)} samples skipped)")
    return TrainingSet(dataset=dataset, instances=instances, skipped=len(errors), errors=errors)


def load_training_csv(path: Path, bin_width: float = 0.1) -> Dataset:
    """Read a training.csv written by build_training_set."""
    try:
        header, rows = read_csv(path)
    except ValueError as e:
        raise BITuneError(str(e)) from None
    if tuple(header) != SampleRecord.columns():
        raise BITuneError(f"{path}: unexpected columns {header}")

    width = len(FEATURE_NAMES)
    records = []
    for line, row in enumerate(rows, start=2):
        try:
            records.append(SampleRecord(
                features=FeatureVector.from_values([float(v) for v in row[:width]]),
                best_a=float(row[width]),
                best_b=float(row[width + 1]),
                best_count=int(row[width + 2]),
            ))
        except (ValueError, IndexError) as e:
            raise BITuneError(f"{path} line {line}: {e}") from None
    return Dataset(records, bin_width=bin_width)


def tuned_params(a_hat: float, b_hat: float, prec: float) -> BIParams:
    """c = 1 - a - b clamped at 0, renormalized, then snapped onto the search grid."""
    a, b = max(0.0, a_hat), max(0.0, b_hat)
    c = max(0.0, 1.0 - a - b)
    return snap_to_grid(BIParams.normalized(a, b, c), prec)


def evaluate_instance(g: Graph, t: ThresholdAssignment, cov: float, grid: GridResult,
                      params: Optional[BIParams] = None) -> dict[str, int]:
    """Initiators needed by the presets, grid-best and (if given) tuned parameters."""
    counts = {}
    if params is not None:
        counts[TUNED] = select_initiators(g, t, params, cov).initiators
    counts[GRID_BEST] = grid.best_count
    for name, p in all_presets().items():
        counts[name] = grid.count_at(p) or select_initiators(g, t, p, cov).initiators
    return counts


def _write_importance(path: Path, forest: RandomForest) -> None:
    write_csv(path, IMPORTANCE_COLUMNS,
              ([rank, name, share, cum] for rank, (name, share, cum) in enumerate(ranked_importance(forest), start=1)))


def train_forests(dataset: Dataset, params: ForestParams, seed: int, workers: int = 1) -> dict[Target, RandomForest]:
    return {
        target: train(dataset, target, params, derive_seed(seed, _FOREST, i), workers)
        for i, target in enumerate(Target)
    }


def save_models(forests: dict[Target, RandomForest], out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for target, forest in forests.items():
        save_forest(forest, out_dir / f"forest_{target.value}.json")
        _write_importance(out_dir / f"importance_{target.value}.csv", forest)


def load_models(model_dir: Path) -> dict[Target, RandomForest]:
    forests = {}
    for target in Target:
        forest = load_forest(model_dir / f"forest_{target.value}.json")
        if forest.target and forest.target != target.value:
            raise BITuneError(f"forest_{target.value}.json was trained for target {forest.target!r}")
        forests[target] = forest
    return forests


def run_pipeline(cfg: ExperimentConfig, workers: int = 1) -> EvaluationReport:
    out = cfg.out_dir
    training = build_training_set(cfg, workers)
    if len(training.dataset) < 3:
        raise BITuneError(f"only {len(training.dataset)} labeled rows; need at least 3 to split")
    write_csv(out / "labels_summary.csv", LABEL_SUMMARY_COLUMNS, label_summary(training.dataset.rows))

    train_idx, test_idx = split_indices(len(training.dataset), cfg.train_fraction, derive_seed(cfg.seed, _SPLIT))
    logger.info(f"Training on {len(train_idx)} rows, testing on {len(test_idx)}")
    forests = train_forests(training.dataset.subset(train_idx), cfg.forest_params, cfg.seed, workers)
    save_models(forests, out)

    evaluations = []
    predictions = []
    for idx in tqdm(test_idx, desc="evaluating", disable=progress_disabled(logger)):
        inst = training.instances[idx]
        _, a_hat = predict(forests[Target.A], inst.features)
        _, b_hat = predict(forests[Target.B], inst.features)
        params = tuned_params(a_hat, b_hat, cfg.prec)
        try:
            counts = evaluate_instance(inst.graph, inst.thresholds, inst.features.cov, inst.grid, params)
        except BITuneError as e:
            raise BITuneError(f"evaluating {inst.instance_id}: {e}") from e
        predictions.append([inst.instance_id, a_hat, b_hat, inst.label.a, inst.label.b])
        evaluations.append(InstanceEvaluation(inst.instance_id, inst.features, inst.grid.best_count, counts))

    report = build_report(evaluations)
    write_csv(out / "predictions.csv", PREDICTION_COLUMNS, predictions)
    write_csv(out / "report.csv", REPORT_COLUMNS, (r.as_row() for r in report.rows))
    write_csv(out / "breakdown.csv", BREAKDOWN_COLUMNS, breakdown(evaluations))
    for s in report.summaries:
        logger.info(f"{s.heuristic:>13}: mean {s.mean_initiators:.2f} initiators, "
                    f"{s.mean_fraction_over_best:.3f}x grid-best over {s.instances} instances")
    return report


@dataclass(frozen=True)
class TuningResult:
    per_sample: list[tuple[float, float]]
    mean_a: float
    mean_b: float
    params: BIParams
    # initiators on the full graph with params, when requested
    initiators: Optional[int] = None


def tune_graph(g: Graph, forests: dict[Target, RandomForest], threshold: str, cov: float, samples: int,
               sample_size: int, seed: int, prec: float = 0.01, apply: bool = False) -> TuningResult:
    """
    Predict (a, b) on random-walk samples of g, average the predicted values and optionally run
    BI with the averaged parameters on the whole graph.
    """
    distribution = get_threshold_distribution(threshold)
    per_sample = []
    for i in range(samples):
        if sample_size and sample_size < g.node_count:
            sample = random_walk_sample(g, SampleSpec(sample_size, derive_seed(seed, _SAMPLE, i)))
        else:
            sample = g
        t = assign_thresholds(sample, distribution, derive_seed(seed, _THRESHOLDS, i))
        features = extract_features(sample, t, cov)
        per_sample.append((predict(forests[Target.A], features)[1], predict(forests[Target.B], features)[1]))

    mean_a = float(np.mean([a for a, _ in per_sample]))
    mean_b = float(np.mean([b for _, b in per_sample]))
    params = tuned_params(mean_a, mean_b, prec)
    initiators = None
    if apply:
        t = assign_thresholds(g, distribution, derive_seed(seed, _THRESHOLDS, samples))
        initiators = select_initiators(g, t, params, cov).initiators
    return TuningResult(per_sample, mean_a, mean_b, params, initiators)


def narrowing_range(g: Graph, forests: dict[Target, RandomForest], threshold: str, cov: float,
                    sizes: Sequence[int], samples: int, seeds: Sequence[int]) -> list[list]:
    """Spread across master seeds of the sample-averaged predictions, per sample size."""
    table = []
    for size in sizes:
        runs = [tune_graph(g, forests, threshold, cov, samples, size, seed) for seed in seeds]
        a = np.array([r.mean_a for r in runs])
        b = np.array([r.mean_b for r in runs])
        table.append([size, len(runs), float(a.mean()), float(a.std()), float(b.mean()), float(b.std())])
        logger.info(f"size {size}: std(a)={a.std():.4f} std(b)={b.std():.4f} over {len(runs)} seeds")
    return table


def label_graph(g: Graph, threshold: str, cov: float, prec: float, seed: int, workers: int = 1) -> tuple[ThresholdAssignment, GridResult]:
    t = assign_thresholds(g, get_threshold_distribution(threshold), seed)
    return t, grid_search(g, t, cov, prec, workers)
