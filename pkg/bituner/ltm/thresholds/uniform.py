import numpy as np

from bituner.errors import ThresholdError
from bituner.ltm.thresholds.base import ThresholdDistribution


class UniformThreshold(ThresholdDistribution):

    def __init__(self, low: float, high: float):
        if not 0.0 < low <= high <= 1.0:
            raise ThresholdError(f"uniform bounds need 0 < low <= high <= 1, got ({low}, {high})")
        self.low = float(low)
        self.high = float(high)

    @property
    def descriptor(self) -> str:
        return f"uniform:{self.low:g},{self.high:g}"

    def sample(self, size: int, rng: np.random.Generator) -> np.ndarray:
        if self.low == self.high:
            return np.full(size, self.low)
        return rng.uniform(self.low, self.high, size)
