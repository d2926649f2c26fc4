from pathlib import Path
from typing import Optional

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
from bituner.errors import BITuneError
from bituner.graph.features import extract_features
from bituner.models.report import REPORT_COLUMNS
from bituner.pipeline import evaluate_instance, label_graph, load_models, tune_graph, tuned_params
from bituner.reporting import InstanceEvaluation, build_report


@click.command("evaluate")
@graph_option
@directed_option
@phi_option
@click.option("--cov", required=True, type=click.FloatRange(min=0, max=1, min_open=True))
@click.option("--models", "model_dir", type=click.Path(exists=True, file_okay=False, path_type=Path),
              help="Tune with these forests.")
@click.option("--a", "a_hat", type=click.FloatRange(min=0, max=1), help="Tune with a given a (needs --b).")
@click.option("--b", "b_hat", type=click.FloatRange(min=0, max=1), help="Tune with a given b (needs --a).")
@click.option("--samples", default=10, show_default=True, type=click.IntRange(min=1))
@click.option("--size", default=0, show_default=True, type=click.IntRange(min=0))
@prec_option
@seed_option
@click.option("--out", required=True, type=click.Path(dir_okay=False, path_type=Path), help="Report CSV.")
@click.pass_context
@reports_errors
def command(ctx, graph_path, directed, phi, cov, model_dir: Optional[Path], a_hat, b_hat, samples, size, prec, seed, out):
    """Compare tuned BI, grid-best BI and the presets on one graph."""
    if (a_hat is None) != (b_hat is None):
        raise BITuneError("--a and --b must be given together")
    g = read_graph(graph_path, directed)
    t, grid = label_graph(g, phi, cov, prec, seed, settings_of(ctx).workers)

    params = None
    if model_dir is not None:
        params = tune_graph(g, load_models(model_dir), phi, cov, samples, size, seed, prec).params
    elif a_hat is not None:
        params = tuned_params(a_hat, b_hat, prec)

    counts = evaluate_instance(g, t, cov, grid, params)
    report = build_report([InstanceEvaluation(graph_path.stem, extract_features(g, t, cov), grid.best_count, counts)])
    write_csv(out, REPORT_COLUMNS, (r.as_row() for r in report.rows))
    for row in report.rows:
        click.echo(f"{row.heuristic:>13}: {row.initiators} initiators ({row.fraction_over_best:.3f}x grid-best)")
