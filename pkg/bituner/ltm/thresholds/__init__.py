from .base import UNREACHABLE, ThresholdAssignment, ThresholdDistribution, assign_thresholds
from .factory import get_threshold_distribution

__all__ = [
    "UNREACHABLE",
    "ThresholdAssignment",
    "ThresholdDistribution",
    "assign_thresholds",
    "get_threshold_distribution",
]
