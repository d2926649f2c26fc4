import numpy as np

from bituner.errors import ThresholdError
from bituner.ltm.thresholds.base import ThresholdDistribution


class FixedThreshold(ThresholdDistribution):

    def __init__(self, phi: float):
        if not 0.0 < phi <= 1.0:
            raise ThresholdError(f"fixed threshold must lie in (0, 1], got {phi}")
        self.phi = float(phi)

    @property
    def descriptor(self) -> str:
        return f"fixed:{self.phi:g}"

    def sample(self, size: int, rng: np.random.Generator) -> np.ndarray:
        return np.full(size, self.phi)
