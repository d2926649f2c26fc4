import numpy as np

from bituner.errors import ThresholdError
from bituner.ltm.thresholds.base import ThresholdDistribution

MAX_REDRAWS = 1000


class TruncatedNormalThreshold(ThresholdDistribution):
    """Normal(mean, std) restricted to (0, 1] by redrawing the values that fall outside."""

    def __init__(self, mean: float, std: float):
        if not 0.0 < mean <= 1.0:
            raise ThresholdError(f"truncated normal mean must lie in (0, 1], got {mean}")
        if std < 0.0:
            raise ThresholdError(f"standard deviation must be >= 0, got {std}")
        self.mean = float(mean)
        self.std = float(std)

    @property
    def descriptor(self) -> str:
        return f"normal:{self.mean:g},{self.std:g}"

    def sample(self, size: int, rng: np.random.Generator) -> np.ndarray:
        if self.std == 0.0:
            return np.full(size, self.mean)

        values = rng.normal(self.mean, self.std, size)
        for _ in range(MAX_REDRAWS):
            outside = (values <= 0.0) | (values > 1.0)
            count = int(outside.sum())
            if count == 0:
                return values
            values[outside] = rng.normal(self.mean, self.std, count)
        raise ThresholdError(f"could not draw {self.descriptor} values inside (0, 1]")
