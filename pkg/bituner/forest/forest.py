"""
Random Forest classifier

Each tree is grown on a bootstrap resample of the training rows with ceil(sqrt(n)) candidate
features per split. Predictions are majority votes (ties go to the lower class). Feature
importance is the entropy decrease attributed to each feature over all trees, normalized.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from bituner.errors import ForestError
from bituner.forest.dataset import Dataset, Target, class_count, representative
from bituner.forest.tree import DecisionTree, grow_tree
from bituner.models.features import FeatureVector
from bituner.models.forest import ForestDocument, ForestParams, TreeDocument

logger = logging.getLogger(__name__)


@dataclass
class RandomForest:
    trees: list[DecisionTree]
    params: ForestParams
    n_classes: int
    feature_names: tuple[str, ...]
    importance: np.ndarray
    bin_width: float
    target: str = ""

    @property
    def n_features(self) -> int:
        return len(self.feature_names)

    def predict_classes(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise ForestError(f"expected rows of {self.n_features} features, got shape {X.shape}")
        votes = np.zeros((len(X), self.n_classes), dtype=np.int64)
        rows = np.arange(len(X))
        for tree in self.trees:
            votes[rows, tree.predict(X)] += 1
        return votes.argmax(axis=1)


def features_per_split(params: ForestParams, n_features: int) -> int:
    if params.max_features is not None:
        return min(params.max_features, n_features)
    return max(1, math.ceil(math.sqrt(n_features)))


def _grow(args: tuple) -> tuple[DecisionTree, np.ndarray]:
    X, y, n_classes, max_features, params, seed = args
    rng = np.random.default_rng(seed)
    sample = rng.integers(0, len(y), size=len(y))
    return grow_tree(X[sample], y[sample], n_classes, max_features, params.min_leaf, params.max_depth, rng)


def fit_forest(X: np.ndarray, y: np.ndarray, n_classes: int, params: ForestParams, rng_seed: int,
               feature_names: Sequence[str], bin_width: float = 0.1, target: str = "",
               workers: int = 1) -> RandomForest:
    """Train on a raw feature matrix; labels must lie in [0, n_classes)."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if len(y) == 0:
        raise ForestError("cannot train on an empty dataset")
    if X.shape != (len(y), len(feature_names)):
        raise ForestError(f"feature matrix shape {X.shape} does not match {len(y)} rows x {len(feature_names)} features")
    if y.min() < 0 or y.max() >= n_classes:
        raise ForestError(f"labels must lie in [0, {n_classes})")

    max_features = features_per_split(params, X.shape[1])
    seeds = np.random.SeedSequence(rng_seed).spawn(params.n_trees)
    jobs = [(X, y, n_classes, max_features, params, seed) for seed in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            grown = list(executor.map(_grow, jobs))
    else:
        grown = [_grow(job) for job in jobs]

    total = np.sum([imp for _, imp in grown], axis=0)
    if total.sum() > 0:
        importance = total / total.sum()
    else:
        importance = np.full(X.shape[1], 1.0 / X.shape[1])

    logger.info(f"Trained {params.n_trees} trees on {len(y)} rows ({n_classes} classes, {max_features} features/split)")
    return RandomForest(
        trees=[tree for tree, _ in grown],
        params=params,
        n_classes=n_classes,
        feature_names=tuple(feature_names),
        importance=importance,
        bin_width=bin_width,
        target=target,
    )


def train(d: Dataset, target: Target | str, params: Optional[ForestParams] = None, rng_seed: int = 0,
          workers: int = 1) -> RandomForest:
    params = params or ForestParams()
    target = Target(target)
    return fit_forest(d.matrix(), d.labels(target), class_count(d.bin_width), params, rng_seed,
                      d.feature_names, bin_width=d.bin_width, target=target.value, workers=workers)


def predict(f: RandomForest, x: FeatureVector | Sequence[float] | np.ndarray) -> tuple[int, float]:
    """Majority-vote class of one feature vector and the value that class stands for."""
    values = x.as_array() if isinstance(x, FeatureVector) else np.asarray(x, dtype=np.float64)
    if values.ndim != 1 or values.shape[0] != f.n_features:
        raise ForestError(f"expected {f.n_features} features, got {values.shape}")
    label = int(f.predict_classes(values.reshape(1, -1))[0])
    return label, representative(label, f.bin_width)


def importance(f: RandomForest) -> dict[str, float]:
    return dict(zip(f.feature_names, f.importance.tolist()))


def ranked_importance(f: RandomForest) -> list[tuple[str, float, float]]:
    """(feature, share, cumulative share), most important first."""
    ranked = sorted(importance(f).items(), key=lambda item: (-item[1], item[0]))
    cumulative = np.cumsum([share for _, share in ranked]).tolist()
    return [(name, share, cum) for (name, share), cum in zip(ranked, cumulative)]


def to_document(f: RandomForest) -> ForestDocument:
    return ForestDocument(
        target=f.target,
        bin_width=f.bin_width,
        n_classes=f.n_classes,
        feature_names=list(f.feature_names),
        params=f.params,
        importance=f.importance.tolist(),
        trees=[
            TreeDocument(
                feature=t.feature.tolist(),
                threshold=t.threshold.tolist(),
                left=t.left.tolist(),
                right=t.right.tolist(),
                histogram=t.histogram.tolist(),
            )
            for t in f.trees
        ],
    )


def from_document(doc: ForestDocument) -> RandomForest:
    trees = [
        DecisionTree(
            feature=np.array(t.feature, dtype=np.int64),
            threshold=np.array(t.threshold, dtype=np.float64),
            left=np.array(t.left, dtype=np.int64),
            right=np.array(t.right, dtype=np.int64),
            histogram=np.array(t.histogram, dtype=np.int64).reshape(-1, doc.n_classes),
        )
        for t in doc.trees
    ]
    return RandomForest(
        trees=trees,
        params=doc.params,
        n_classes=doc.n_classes,
        feature_names=tuple(doc.feature_names),
        importance=np.array(doc.importance, dtype=np.float64),
        bin_width=doc.bin_width,
        target=doc.target,
    )


def save_forest(f: RandomForest, path: str | Path) -> None:
    Path(path).write_text(to_document(f).model_dump_json(indent=1))


def load_forest(path: str | Path) -> RandomForest:
    try:
        return from_document(ForestDocument.model_validate_json(Path(path).read_text()))
    except FileNotFoundError:
        raise ForestError(f"model file not found: {path}") from None
    except ValueError as e:
        raise ForestError(f"invalid model file {path}: {e}") from None
