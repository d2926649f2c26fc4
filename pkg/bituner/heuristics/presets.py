from enum import Enum

from bituner.errors import BITuneError
from bituner.models.params import BIParams


class Preset(str, Enum):
    RES = "res"
    DEG = "deg"
    RD = "RD"
    CI_TM = "CI-TM"


# baselines expressed as fixed Balanced Index weights; CI-TM is the L=1 sphere of influence
_PRESETS = {
    Preset.RES: BIParams(a=1.0, b=0.0, c=0.0),
    Preset.DEG: BIParams(a=0.0, b=1.0, c=0.0),
    Preset.RD: BIParams(a=0.5, b=0.5, c=0.0),
    Preset.CI_TM: BIParams(a=0.0, b=0.5, c=0.5),
}


def preset(name: str | Preset) -> BIParams:
    try:
        return _PRESETS[Preset(name)]
    except ValueError:
        raise BITuneError(f"Unsupported preset: {name!r}. Supported: {', '.join(p.value for p in Preset)}") from None


def all_presets() -> dict[str, BIParams]:
    return {p.value: params for p, params in _PRESETS.items()}
