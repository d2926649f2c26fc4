from pathlib import Path

import click

from bituner.commands.common import directed_option, graph_option, read_graph, reports_errors, seed_option
from bituner.graph.core import write_edge_list
from bituner.graph.sampler import SampleSpec, random_walk_sample


@click.command("sample")
@graph_option
@directed_option
@click.option("--size", required=True, type=click.IntRange(min=2), help="Distinct nodes to collect.")
@click.option("--max-steps-factor", default=100, show_default=True, type=click.IntRange(min=1))
@seed_option
@click.option("--out", required=True, type=click.Path(dir_okay=False, path_type=Path))
@reports_errors
def command(graph_path, directed, size, max_steps_factor, seed, out):
    """Draw a random-walk sample and write it as an edge list."""
    g = read_graph(graph_path, directed)
    sample = random_walk_sample(g, SampleSpec(size, seed, max_steps_factor))
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w") as handle:
        write_edge_list(sample, handle)
    click.echo(f"Wrote {out}: {sample.node_count} nodes, {sample.arc_count} arcs sampled from {g}")
