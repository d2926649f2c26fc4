from typing import Optional

from pydantic import BaseModel, Field


class ForestParams(BaseModel):
    n_trees: int = Field(default=100, ge=1)
    min_leaf: int = Field(default=2, ge=1)
    # None means ceil(sqrt(n_features))
    max_features: Optional[int] = Field(default=None, ge=1)
    max_depth: Optional[int] = Field(default=None, ge=1)


class TreeDocument(BaseModel):
    feature: list[int]
    threshold: list[float]
    left: list[int]
    right: list[int]
    histogram: list[list[int]]


class ForestDocument(BaseModel):
    """On-disk form of a trained forest."""

    format_version: int = 1
    target: str
    bin_width: float
    n_classes: int
    feature_names: list[str]
    params: ForestParams
    importance: list[float]
    trees: list[TreeDocument]
