"""
Entropy-split classification tree

Axis-aligned threshold splits (x <= threshold goes left). Leaves keep the class histogram of the
training rows that reached them.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

MIN_GAIN = 1e-12


def entropy(counts: np.ndarray) -> np.ndarray:
    """Entropy in bits of class-count rows (last axis)."""
    counts = np.asarray(counts, dtype=np.float64)
    totals = counts.sum(axis=-1, keepdims=True)
    p = np.divide(counts, totals, out=np.zeros_like(counts), where=totals > 0)
    logs = np.log2(p, out=np.zeros_like(p), where=p > 0)
    return -(p * logs).sum(axis=-1)


@dataclass
class DecisionTree:
    feature: np.ndarray    # -1 marks a leaf
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    histogram: np.ndarray  # (nodes, classes)

    @property
    def node_count(self) -> int:
        return len(self.feature)

    @property
    def leaf_class(self) -> np.ndarray:
        return self.histogram.argmax(axis=1)

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Leaf index reached by every row of X."""
        node = np.zeros(len(X), dtype=np.int64)
        rows = np.arange(len(X))
        while True:
            internal = self.feature[node] >= 0
            if not internal.any():
                return node
            at = node[internal]
            go_left = X[rows[internal], self.feature[at]] <= self.threshold[at]
            node[internal] = np.where(go_left, self.left[at], self.right[at])

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.leaf_class[self.apply(X)]


def _best_split(x: np.ndarray, y: np.ndarray, n_classes: int, min_leaf: int) -> Optional[tuple[float, float, int]]:
    """Best threshold on one feature as (weighted entropy decrease, threshold, left size)."""
    order = np.argsort(x, kind="stable")
    xs, ys = x[order], y[order]
    n = len(xs)

    onehot = np.zeros((n, n_classes), dtype=np.int64)
    onehot[np.arange(n), ys] = 1
    left_counts = np.cumsum(onehot, axis=0)[:-1]          # left part holds rows [0, i]
    right_counts = left_counts[-1] + onehot[-1] - left_counts
    sizes = np.arange(1, n)

    valid = (sizes >= min_leaf) & (n - sizes >= min_leaf) & (xs[:-1] < xs[1:])
    if not valid.any():
        return None

    parent = entropy(left_counts[-1] + onehot[-1]) * n
    decrease = parent - sizes * entropy(left_counts) - (n - sizes) * entropy(right_counts)
    decrease[~valid] = -np.inf
    i = int(np.argmax(decrease))

    threshold = (xs[i] + xs[i + 1]) / 2.0
    if threshold >= xs[i + 1]:
        threshold = xs[i]
    return float(decrease[i]), float(threshold), i + 1


def grow_tree(X: np.ndarray, y: np.ndarray, n_classes: int, max_features: int, min_leaf: int,
              max_depth: Optional[int], rng: np.random.Generator) -> tuple[DecisionTree, np.ndarray]:
    """
    Grow a tree on (X, y) and return it with the entropy decrease credited to each feature.

    A node becomes a leaf when it is pure, too small to split into two min_leaf children, at
    max_depth, or when none of its sampled features yields a positive gain.
    """
    n_features = X.shape[1]
    importance = np.zeros(n_features)
    feature, threshold, left, right, histogram = [], [], [], [], []

    def new_node(rows: np.ndarray) -> int:
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        histogram.append(np.bincount(y[rows], minlength=n_classes))
        return len(feature) - 1

    stack = [(new_node(np.arange(len(y))), np.arange(len(y)), 0)]
    while stack:
        node, rows, depth = stack.pop()
        counts = histogram[node]
        if np.count_nonzero(counts) <= 1 or len(rows) < 2 * min_leaf:
            continue
        if max_depth is not None and depth >= max_depth:
            continue

        best = None
        for f in rng.choice(n_features, size=min(max_features, n_features), replace=False).tolist():
            split = _best_split(X[rows, f], y[rows], n_classes, min_leaf)
            if split is not None and (best is None or split[0] > best[0]):
                best = (split[0], split[1], f)
        if best is None or best[0] <= MIN_GAIN * len(rows):
            continue

        gain, cut, f = best
        importance[f] += gain
        goes_left = X[rows, f] <= cut
        left_rows, right_rows = rows[goes_left], rows[~goes_left]
        feature[node], threshold[node] = f, cut
        left[node] = new_node(left_rows)
        right[node] = new_node(right_rows)
        stack.append((right[node], right_rows, depth + 1))
        stack.append((left[node], left_rows, depth + 1))

    tree = DecisionTree(
        feature=np.array(feature, dtype=np.int64),
        threshold=np.array(threshold, dtype=np.float64),
        left=np.array(left, dtype=np.int64),
        right=np.array(right, dtype=np.int64),
        histogram=np.array(histogram, dtype=np.int64).reshape(-1, n_classes),
    )
    return tree, importance
