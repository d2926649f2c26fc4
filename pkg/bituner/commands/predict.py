from pathlib import Path

import click

from bituner.commands.common import (
    comma_ints,
    directed_option,
    graph_option,
    phi_option,
    prec_option,
    read_graph,
    reports_errors,
    seed_option,
)
from bituner.csvio import write_csv
from bituner.pipeline import NARROWING_COLUMNS, load_models, narrowing_range, tune_graph

model_dir_option = click.option("--models", "model_dir", required=True,
                                type=click.Path(exists=True, file_okay=False, path_type=Path),
                                help="Directory holding forest_a.json and forest_b.json.")


@click.command("predict")
@graph_option
@directed_option
@model_dir_option
@phi_option
@click.option("--cov", required=True, type=click.FloatRange(min=0, max=1, min_open=True))
@click.option("--samples", default=10, show_default=True, type=click.IntRange(min=1), help="Random-walk samples to average.")
@click.option("--size", default=0, show_default=True, type=click.IntRange(min=0), help="Sample size; 0 uses the whole graph.")
@prec_option
@seed_option
@click.option("--apply", is_flag=True, help="Also count initiators on the whole graph with the tuned parameters.")
@click.option("--narrowing", callback=comma_ints, help="Comma-separated sample sizes to measure prediction spread for.")
@click.option("--seeds", default=10, show_default=True, type=click.IntRange(min=1), help="Master seeds per narrowing size.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="CSV of per-sample or narrowing results.")
@reports_errors
def command(graph_path, directed, model_dir, phi, cov, samples, size, prec, seed, apply, narrowing, seeds, out):
    """Predict BI parameters for a graph from random-walk samples."""
    g = read_graph(graph_path, directed)
    forests = load_models(model_dir)

    if narrowing:
        table = narrowing_range(g, forests, phi, cov, narrowing, samples, range(seed, seed + seeds))
        if out is not None:
            write_csv(out, NARROWING_COLUMNS, table)
        for size_, n, mean_a, std_a, mean_b, std_b in table:
            click.echo(f"size {size_}: a={mean_a:.3f}±{std_a:.3f} b={mean_b:.3f}±{std_b:.3f} over {n} seeds")
        return

    result = tune_graph(g, forests, phi, cov, samples, size, seed, prec, apply)
    if out is not None:
        write_csv(out, ("sample", "a_hat", "b_hat"), ([i, a, b] for i, (a, b) in enumerate(result.per_sample)))
    line = f"Tuned {result.params} from {len(result.per_sample)} samples"
    if result.initiators is not None:
        line += f"; {result.initiators} initiators reach cov={cov:g}"
    click.echo(line)
