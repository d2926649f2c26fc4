from pydantic import BaseModel, ConfigDict, Field, model_validator

SIMPLEX_TOLERANCE = 1e-9


class BIParams(BaseModel):
    """A point (a, b, c) of the probability simplex weighting the three Balanced Index terms."""

    model_config = ConfigDict(frozen=True)

    a: float = Field(ge=0.0)
    b: float = Field(ge=0.0)
    c: float = Field(ge=0.0)

    @model_validator(mode="after")
    def check_simplex(self) -> "BIParams":
        total = self.a + self.b + self.c
        if abs(total - 1.0) > SIMPLEX_TOLERANCE:
            raise ValueError(f"a + b + c must equal 1, got {total!r}")
        return self

    @classmethod
    def normalized(cls, a: float, b: float, c: float) -> "BIParams":
        """Rescale non-negative weights onto the simplex."""
        total = a + b + c
        if min(a, b, c) < 0.0 or total <= 0.0:
            raise ValueError(f"weights must be non-negative with a positive sum, got ({a}, {b}, {c})")
        return cls(a=a / total, b=b / total, c=c / total)

    def as_tuple(self) -> tuple[float, float, float]:
        return self.a, self.b, self.c

    def __str__(self) -> str:
        return f"({self.a:g}, {self.b:g}, {self.c:g})"
