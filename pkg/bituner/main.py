import click

from bituner import __version__
from bituner.commands import evaluate, features, gen, grid, pipeline, predict, sample, train
from bituner.config import get_settings
from bituner.logs import setup_logging


@click.group()
@click.version_option(__version__, prog_name="bituner")
@click.option("--log-level", help="Overrides BI_TUNE_LOG_LEVEL.")
@click.pass_context
def cli(ctx: click.Context, log_level: str | None):
    """Tune Balanced Index seed selection for Linear Threshold cascades."""
    settings = get_settings()
    setup_logging(log_level or settings.log_level)
    ctx.obj = settings


cli.add_command(gen.command)
cli.add_command(sample.command)
cli.add_command(features.command)
cli.add_command(grid.command)
cli.add_command(train.command)
cli.add_command(predict.command)
cli.add_command(evaluate.command)
cli.add_command(pipeline.command)


if __name__ == "__main__":
    cli()
