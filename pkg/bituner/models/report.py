from pydantic import BaseModel, Field

REPORT_COLUMNS = ("instance_id", "heuristic", "initiators", "fraction_over_best")

TUNED = "tuned-BI"
GRID_BEST = "grid-best-BI"


class ReportRow(BaseModel):
    instance_id: str
    heuristic: str
    initiators: int = Field(ge=1)
    fraction_over_best: float = Field(ge=0.0)

    def as_row(self) -> list:
        return [self.instance_id, self.heuristic, self.initiators, self.fraction_over_best]


class HeuristicSummary(BaseModel):
    heuristic: str
    instances: int
    mean_initiators: float
    mean_fraction_over_best: float


class EvaluationReport(BaseModel):
    rows: list[ReportRow]
    summaries: list[HeuristicSummary]

    def summary(self, heuristic: str) -> HeuristicSummary:
        for s in self.summaries:
            if s.heuristic == heuristic:
                return s
        raise KeyError(heuristic)

    def counts(self, heuristic: str) -> dict[str, int]:
        return {r.instance_id: r.initiators for r in self.rows if r.heuristic == heuristic}
