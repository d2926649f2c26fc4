"""
Aggregation of evaluation results and label statistics into report tables
"""

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.stats import spearmanr

from bituner.heuristics.presets import Preset
from bituner.models.features import FeatureVector, SampleRecord
from bituner.models.report import GRID_BEST, TUNED, EvaluationReport, HeuristicSummary, ReportRow

HEURISTICS = (TUNED, GRID_BEST) + tuple(p.value for p in Preset)

BREAKDOWN_COLUMNS = ("group", "bin", "heuristic", "instances", "mean_initiators", "mean_extra_over_best")
LABEL_SUMMARY_COLUMNS = ("cov", "rows", "spearman_ab", "mean_a_plus_b", "mean_a", "mean_b")
PHI_STD_BIN = 0.1
RHO_BIN = 0.2


@dataclass(frozen=True)
class InstanceEvaluation:
    instance_id: str
    features: FeatureVector
    best_count: int
    counts: dict[str, int]


def build_report(evaluations: Sequence[InstanceEvaluation]) -> EvaluationReport:
    rows = []
    for ev in evaluations:
        for heuristic in HEURISTICS:
            if heuristic in ev.counts:
                n = ev.counts[heuristic]
                rows.append(ReportRow(instance_id=ev.instance_id, heuristic=heuristic, initiators=n,
                                      fraction_over_best=n / ev.best_count))

    summaries = []
    for heuristic in HEURISTICS:
        mine = [r for r in rows if r.heuristic == heuristic]
        if mine:
            summaries.append(HeuristicSummary(
                heuristic=heuristic,
                instances=len(mine),
                mean_initiators=float(np.mean([r.initiators for r in mine])),
                mean_fraction_over_best=float(np.mean([r.fraction_over_best for r in mine])),
            ))
    return EvaluationReport(rows=rows, summaries=summaries)


def _bin_label(value: float, width: float) -> str:
    low = math.floor(value / width + 1e-9) * width
    return f"[{low:.1f},{low + width:.1f})"


def breakdown(evaluations: Sequence[InstanceEvaluation]) -> list[list]:
    """Mean initiators and mean extra initiators over grid-best per heuristic, by cov, phi_std and rho."""
    groups: dict[tuple[str, str, str], list[tuple[int, int]]] = defaultdict(list)
    for ev in evaluations:
        keys = (
            ("cov", f"{ev.features.cov:g}"),
            ("phi_std", _bin_label(ev.features.phi_std, PHI_STD_BIN)),
            ("rho", _bin_label(ev.features.rho, RHO_BIN)),
        )
        for group, label in keys:
            for heuristic, n in ev.counts.items():
                groups[(group, label, heuristic)].append((n, n - ev.best_count))

    order = {h: i for i, h in enumerate(HEURISTICS)}
    table = []
    for (group, label, heuristic) in sorted(groups, key=lambda k: (k[0], k[1], order.get(k[2], len(order)))):
        values = groups[(group, label, heuristic)]
        table.append([group, label, heuristic, len(values),
                      float(np.mean([n for n, _ in values])), float(np.mean([e for _, e in values]))])
    return table


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Rank correlation with average ranks for ties; 0 when either side is constant."""
    x, y = np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)
    if len(x) < 2 or np.ptp(x) == 0 or np.ptp(y) == 0:
        return 0.0
    return float(spearmanr(x, y).statistic)


def label_summary(records: Iterable[SampleRecord]) -> list[list]:
    """How the optimal a and b relate, per target coverage."""
    by_cov: dict[float, list[SampleRecord]] = defaultdict(list)
    for r in records:
        by_cov[r.features.cov].append(r)

    table = []
    for cov in sorted(by_cov):
        a = np.array([r.best_a for r in by_cov[cov]])
        b = np.array([r.best_b for r in by_cov[cov]])
        table.append([cov, len(a), spearman(a, b), float((a + b).mean()), float(a.mean()), float(b.mean())])
    return table
