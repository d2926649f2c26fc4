from bituner.errors import ThresholdError
from bituner.ltm.thresholds.base import ThresholdDistribution
from bituner.ltm.thresholds.fixed import FixedThreshold
from bituner.ltm.thresholds.normal import TruncatedNormalThreshold
from bituner.ltm.thresholds.uniform import UniformThreshold

_ARITY = {"fixed": 1, "uniform": 2, "normal": 2}


def get_threshold_distribution(descriptor: str) -> ThresholdDistribution:
    """
    Build a distribution from its `name:p1[,p2]` form.

    fixed:0.5, uniform:0.3,0.7 and normal:0.5,0.1 (truncated to (0, 1]) are understood.
    """
    name, _, raw = descriptor.strip().partition(":")
    name = name.strip().lower()
    if name not in _ARITY:
        raise ThresholdError(f"Unsupported threshold distribution: {name!r}. Supported: {', '.join(_ARITY)}")

    try:
        params = [float(p) for p in raw.split(",")] if raw.strip() else []
    except ValueError:
        raise ThresholdError(f"non-numeric parameter in threshold descriptor {descriptor!r}") from None
    if len(params) != _ARITY[name]:
        raise ThresholdError(f"{name} takes {_ARITY[name]} parameter(s), got {len(params)} in {descriptor!r}")

    if name == "fixed":
        return FixedThreshold(*params)
    elif name == "uniform":
        return UniformThreshold(*params)
    else:
        return TruncatedNormalThreshold(*params)
