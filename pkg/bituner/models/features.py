from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

# column order for CSV files and forest training
FEATURE_NAMES: tuple[str, ...] = (
    "N",
    "C_mean",
    "C_std",
    "kout_mean",
    "kout_std",
    "Nout_mean",
    "Nout_std",
    "rho",
    "E_d",
    "cov",
    "phi_mean",
    "phi_std",
)


class FeatureVector(BaseModel):
    model_config = ConfigDict(frozen=True)

    N: int = Field(ge=1)
    C_mean: float = Field(ge=0.0, le=1.0)
    C_std: float = Field(ge=0.0)
    kout_mean: float = Field(ge=0.0)
    kout_std: float = Field(ge=0.0)
    Nout_mean: float = Field(ge=0.0)
    Nout_std: float = Field(ge=0.0)
    rho: float = Field(ge=-1.0, le=1.0)
    E_d: float = Field(ge=0.0, le=1.0)
    cov: float = Field(gt=0.0, le=1.0)
    phi_mean: float = Field(gt=0.0, le=1.0)
    phi_std: float = Field(ge=0.0)

    def as_array(self) -> np.ndarray:
        return np.array([float(getattr(self, name)) for name in FEATURE_NAMES])

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "FeatureVector":
        if len(values) != len(FEATURE_NAMES):
            raise ValueError(f"expected {len(FEATURE_NAMES)} feature values, got {len(values)}")
        fields = dict(zip(FEATURE_NAMES, values))
        fields["N"] = int(round(float(fields["N"])))
        return cls(**fields)


class SampleRecord(BaseModel):
    """One training row: the features of an instance and its grid-search optimum."""

    model_config = ConfigDict(frozen=True)

    features: FeatureVector
    best_a: float = Field(ge=0.0, le=1.0)
    best_b: float = Field(ge=0.0, le=1.0)
    best_count: int = Field(ge=1)

    @staticmethod
    def columns() -> tuple[str, ...]:
        return FEATURE_NAMES + ("best_a", "best_b", "best_count")

    def as_row(self) -> list:
        return [getattr(self.features, name) for name in FEATURE_NAMES] + [self.best_a, self.best_b, self.best_count]
