from pathlib import Path
from typing import Optional

import click

from bituner.commands.common import reports_errors, settings_of
from bituner.config import load_config, parse_overrides
from bituner.models.report import TUNED
from bituner.pipeline import build_training_set, run_pipeline


@click.command("pipeline")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Flat KEY=VALUE experiment file.")
@click.option("--set", "overrides", multiple=True, metavar="KEY=VALUE", help="Override a config key; repeatable.")
@click.option("--seed", type=click.IntRange(min=0), help="Master seed (same as --set seed=...).")
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path), help="Output directory.")
@click.option("--label-only", is_flag=True, help="Stop after writing training.csv.")
@click.pass_context
@reports_errors
def command(ctx, config_path: Optional[Path], overrides, seed, out_dir, label_only):
    """Run sampling, labeling, training and evaluation end to end."""
    values = parse_overrides(overrides)
    if seed is not None:
        values["seed"] = str(seed)
    if out_dir is not None:
        values["out_dir"] = str(out_dir)
    cfg = load_config(config_path, values)
    workers = settings_of(ctx).workers

    if label_only:
        training = build_training_set(cfg, workers)
        click.echo(f"Labeled {len(training.dataset)} rows into {cfg.out_dir / 'training.csv'} "
                   f"({training.skipped} samples skipped)")
        return

    report = run_pipeline(cfg, workers)
    tuned = report.summary(TUNED)
    click.echo(f"Evaluated {tuned.instances} test instances into {cfg.out_dir}; "
               f"tuned BI uses {tuned.mean_fraction_over_best:.3f}x the grid-best initiators on average")
