from pathlib import Path

import click

from bituner.commands.common import reports_errors, seed_option, settings_of
from bituner.forest.forest import ranked_importance
from bituner.models.forest import ForestParams
from bituner.pipeline import load_training_csv, save_models, train_forests


@click.command("train")
@click.option("--training", "training_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path), help="training.csv from the pipeline.")
@click.option("--out-dir", required=True, type=click.Path(file_okay=False, path_type=Path))
@click.option("--trees", default=100, show_default=True, type=click.IntRange(min=1))
@click.option("--min-leaf", default=2, show_default=True, type=click.IntRange(min=1))
@click.option("--max-features", default=0, show_default=True, type=click.IntRange(min=0), help="0 means ceil(sqrt(features)).")
@click.option("--max-depth", default=0, show_default=True, type=click.IntRange(min=0), help="0 means unlimited.")
@click.option("--bin-width", default=0.1, show_default=True, type=float)
@seed_option
@click.pass_context
@reports_errors
def command(ctx, training_path, out_dir, trees, min_leaf, max_features, max_depth, bin_width, seed):
    """Train the a and b forests on every row of a training file."""
    dataset = load_training_csv(training_path, bin_width)
    params = ForestParams(n_trees=trees, min_leaf=min_leaf, max_features=max_features or None,
                          max_depth=max_depth or None)
    forests = train_forests(dataset, params, seed, settings_of(ctx).workers)
    save_models(forests, out_dir)
    tops = ", ".join(f"{t.value}: {ranked_importance(f)[0][0]}" for t, f in forests.items())
    click.echo(f"Trained forests on {len(dataset)} rows into {out_dir} (top feature {tops})")
