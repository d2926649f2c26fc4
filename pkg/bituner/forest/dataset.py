"""
Training data for the parameter classifiers

Targets a and b are continuous in [0, 1]; they are sliced into classes of width bin_width whose
representative values are the class centers class * bin_width.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from bituner.errors import ForestError
from bituner.models.features import FEATURE_NAMES, SampleRecord


class Target(str, Enum):
    A = "a"
    B = "b"


def bins_per_unit(bin_width: float) -> int:
    if not 0.0 < bin_width <= 1.0:
        raise ForestError(f"bin width must lie in (0, 1], got {bin_width}")
    units = round(1.0 / bin_width)
    if abs(units * bin_width - 1.0) > 1e-9:
        raise ForestError(f"1/bin_width must be an integer, got {bin_width}")
    return units


def class_count(bin_width: float) -> int:
    return bins_per_unit(bin_width) + 1


def discretize(value: float, bin_width: float) -> int:
    if not 0.0 <= value <= 1.0:
        raise ForestError(f"value must lie in [0, 1], got {value}")
    # round half up; Python's round() would send 0.25 to class 2 with width 0.1
    return int(math.floor(value * bins_per_unit(bin_width) + 0.5))


def representative(label: int, bin_width: float) -> float:
    """Class center, computed as an exact ratio so it matches grid points of the same value."""
    return label / bins_per_unit(bin_width)


@dataclass
class Dataset:
    rows: list[SampleRecord]
    bin_width: float = 0.1
    feature_names: tuple[str, ...] = field(default=FEATURE_NAMES)

    def __post_init__(self):
        bins_per_unit(self.bin_width)

    def __len__(self) -> int:
        return len(self.rows)

    def matrix(self) -> np.ndarray:
        return np.array([r.features.as_array() for r in self.rows], dtype=np.float64).reshape(-1, len(self.feature_names))

    def targets(self, target: Target | str) -> np.ndarray:
        attr = "best_a" if Target(target) == Target.A else "best_b"
        return np.array([getattr(r, attr) for r in self.rows], dtype=np.float64)

    def labels(self, target: Target | str) -> np.ndarray:
        return np.array([discretize(v, self.bin_width) for v in self.targets(target)], dtype=np.int64)

    def subset(self, indices: Sequence[int]) -> "Dataset":
        return Dataset([self.rows[i] for i in indices], self.bin_width, self.feature_names)


def split_indices(count: int, train_fraction: float, rng_seed: int) -> tuple[list[int], list[int]]:
    """Shuffle by seed and cut; round(train_fraction * count) rows go to training."""
    if not 0.0 < train_fraction < 1.0:
        raise ForestError(f"train fraction must lie in (0, 1), got {train_fraction}")
    if count < 3:
        raise ForestError(f"need at least 3 rows to split, got {count}")
    order = np.random.default_rng(rng_seed).permutation(count)
    cut = min(count - 1, max(1, int(round(train_fraction * count))))
    return sorted(order[:cut].tolist()), sorted(order[cut:].tolist())


def split_dataset(d: Dataset, train_fraction: float, rng_seed: int) -> tuple[Dataset, Dataset]:
    train_rows, test_rows = split_indices(len(d), train_fraction, rng_seed)
    return d.subset(train_rows), d.subset(test_rows)
