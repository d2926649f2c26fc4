"""
Configuration

Settings holds process-level knobs read from the environment (prefix BI_TUNE_) or a .env file.
ExperimentConfig describes one experiment; it is read from a flat KEY=VALUE file and every key
can be overridden from the command line.
"""

import os
from pathlib import Path
from typing import Any, Mapping, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from bituner.errors import ConfigError
from bituner.forest.dataset import bins_per_unit
from bituner.graph.generators import SwapBias
from bituner.heuristics.oracle import LabelRule, grid_steps
from bituner.ltm.thresholds import get_threshold_distribution
from bituner.models.forest import ForestParams


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="BI_TUNE_", env_file=".env", extra="ignore")

    threads: Optional[int] = Field(default=None, ge=1)
    log_level: str = "INFO"

    @property
    def workers(self) -> int:
        return self.threads or os.cpu_count() or 1


def get_settings() -> Settings:
    return Settings()


def _split(value: Any, sep: str = ",") -> Any:
    if isinstance(value, str):
        return [part.strip() for part in value.split(sep) if part.strip()]
    return value


class ExperimentConfig(BaseModel):
    graphs: list[Path] = Field(default_factory=list)
    directed: bool = False
    # "N:k" pairs of the synthetic ER-with-swaps family
    synthetic: list[str] = Field(default_factory=list)
    synthetic_count: int = Field(default=75, ge=1)
    swap_factors: list[float] = Field(default_factory=lambda: [0.0, 1.0, 5.0])
    swap_biases: list[SwapBias] = Field(default_factory=lambda: list(SwapBias))
    thresholds: list[str] = Field(default_factory=lambda: ["normal:0.5,0.0", "normal:0.5,0.1",
                                                           "normal:0.5,0.2", "normal:0.5,0.3"])
    coverages: list[float] = Field(default_factory=lambda: [0.5, 0.7, 0.9])
    samples_per_graph: int = Field(default=1, ge=1)
    # 0 keeps the whole graph as the instance
    sample_size: int = Field(default=0, ge=0)
    prec: float = 0.01
    # which of several tied optima becomes the training target
    label_rule: LabelRule = LabelRule.CENTER
    trees: int = Field(default=100, ge=1)
    min_leaf: int = Field(default=2, ge=1)
    max_features: int = Field(default=0, ge=0)
    max_depth: int = Field(default=0, ge=0)
    bin_width: float = 0.1
    train_fraction: float = Field(default=2 / 3, gt=0.0, lt=1.0)
    seed: int = Field(default=0, ge=0)
    out_dir: Path = Path("out")

    @field_validator("graphs", "synthetic", "swap_factors", "swap_biases", "coverages", mode="before")
    @classmethod
    def split_lists(cls, value: Any) -> Any:
        return _split(value)

    @field_validator("thresholds", mode="before")
    @classmethod
    def split_thresholds(cls, value: Any) -> Any:
        # descriptors carry commas of their own
        return _split(value, ";")

    @field_validator("graphs")
    @classmethod
    def check_graphs(cls, value: list[Path]) -> list[Path]:
        for path in value:
            if not path.is_file():
                raise ValueError(f"graph file not readable: {path}")
        return value

    @field_validator("synthetic")
    @classmethod
    def check_synthetic(cls, value: list[str]) -> list[str]:
        for pair in value:
            n, sep, k = pair.partition(":")
            try:
                if not sep or int(n) < 10 or not 0 < float(k) < int(n) - 1:
                    raise ValueError
            except ValueError:
                raise ValueError(f"synthetic entry must be N:k with N >= 10 and 0 < k < N-1, got {pair!r}") from None
        return value

    @field_validator("thresholds")
    @classmethod
    def check_thresholds(cls, value: list[str]) -> list[str]:
        if not value:
            raise ValueError("at least one threshold distribution is required")
        for descriptor in value:
            get_threshold_distribution(descriptor)
        return value

    @field_validator("coverages")
    @classmethod
    def check_coverages(cls, value: list[float]) -> list[float]:
        if not value:
            raise ValueError("at least one coverage is required")
        for cov in value:
            if not 0.0 < cov <= 1.0:
                raise ValueError(f"coverage must lie in (0, 1], got {cov}")
        return value

    @field_validator("prec")
    @classmethod
    def check_prec(cls, value: float) -> float:
        grid_steps(value)
        return value

    @field_validator("bin_width")
    @classmethod
    def check_bin_width(cls, value: float) -> float:
        bins_per_unit(value)
        return value

    @model_validator(mode="after")
    def check_inputs(self) -> "ExperimentConfig":
        if not self.graphs and not self.synthetic:
            raise ValueError("configure at least one of graphs or synthetic")
        if self.sample_size == 1:
            raise ValueError("sample_size must be 0 (whole graph) or >= 2")
        return self

    @property
    def forest_params(self) -> ForestParams:
        return ForestParams(
            n_trees=self.trees,
            min_leaf=self.min_leaf,
            max_features=self.max_features or None,
            max_depth=self.max_depth or None,
        )


def parse_overrides(pairs: tuple[str, ...] | list[str]) -> dict[str, str]:
    overrides = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"override must look like KEY=VALUE, got {pair!r}")
        overrides[key.strip().lower()] = value.strip()
    return overrides


def load_config(path: Optional[str | Path] = None, overrides: Optional[Mapping[str, Any]] = None) -> ExperimentConfig:
    """Read a flat KEY=VALUE file (keys case-insensitive), apply overrides, validate."""
    values: dict[str, Any] = {}
    if path is not None:
        if not Path(path).is_file():
            raise ConfigError(f"config file not found: {path}")
        values.update({k.lower(): v for k, v in dotenv_values(path).items() if v is not None})
    values.update({k.lower(): v for k, v in (overrides or {}).items()})

    unknown = sorted(set(values) - set(ExperimentConfig.model_fields))
    if unknown:
        raise ConfigError(f"unknown key(s): {', '.join(unknown)}")
    try:
        return ExperimentConfig(**values)
    except ValidationError as e:
        first = e.errors()[0]
        key = ".".join(str(part) for part in first["loc"]) or None
        raise ConfigError(first["msg"], key=key) from None
