import sys
from pathlib import Path

import click

from bituner.commands.common import (
    comma_coverages,
    directed_option,
    graph_option,
    phi_option,
    read_graph,
    reports_errors,
    seed_option,
)
from bituner.csvio import write_csv
from bituner.graph.features import extract_features
from bituner.ltm.thresholds import assign_thresholds, get_threshold_distribution
from bituner.models.features import FEATURE_NAMES


@click.command("features")
@graph_option
@directed_option
@phi_option
@click.option("--cov", required=True, callback=comma_coverages, help="Target coverage(s), comma-separated.")
@seed_option
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="CSV file; stdout when omitted.")
@reports_errors
def command(graph_path, directed, phi, cov, seed, out):
    """Compute the feature vector of a graph for each target coverage."""
    g = read_graph(graph_path, directed)
    t = assign_thresholds(g, get_threshold_distribution(phi), seed)
    rows = [[getattr(extract_features(g, t, c), name) for name in FEATURE_NAMES] for c in cov]
    if out is None:
        click.echo(",".join(FEATURE_NAMES))
        for row in rows:
            click.echo(",".join(repr(v) if isinstance(v, float) else str(v) for v in row))
    else:
        write_csv(out, FEATURE_NAMES, rows)
        click.echo(f"Wrote {len(rows)} feature row(s) to {out}", err=True)
