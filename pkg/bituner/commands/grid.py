from pathlib import Path

import click

from bituner.commands.common import (
    directed_option,
    graph_option,
    phi_option,
    prec_option,
    read_graph,
    reports_errors,
    seed_option,
    settings_of,
)
from bituner.csvio import write_csv
from bituner.heuristics.oracle import SURFACE_COLUMNS
from bituner.pipeline import label_graph


@click.command("grid")
@graph_option
@directed_option
@phi_option
@click.option("--cov", required=True, type=click.FloatRange(min=0, max=1, min_open=True), help="Target coverage.")
@prec_option
@seed_option
@click.option("--out", required=True, type=click.Path(dir_okay=False, path_type=Path), help="Surface CSV.")
@click.pass_context
@reports_errors
def command(ctx, graph_path, directed, phi, cov, prec, seed, out):
    """Search the (a, b, c) triangle grid and export the initiator surface."""
    g = read_graph(graph_path, directed)
    _, result = label_graph(g, phi, cov, prec, seed, settings_of(ctx).workers)
    rows = write_csv(out, SURFACE_COLUMNS, result.rows())
    click.echo(f"Wrote {rows} grid points to {out}; best {result.best} needs {result.best_count} initiators")
