import functools
import logging
from pathlib import Path

import click
from pydantic import ValidationError

from bituner.config import Settings
from bituner.errors import BITuneError
from bituner.graph.core import Graph, load_edge_list

logger = logging.getLogger(__name__)


def reports_errors(func):
    """Turn library errors into a one-line diagnostic and exit status 1."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (BITuneError, OSError) as e:
            logger.debug("command failed", exc_info=True)
            raise click.ClickException(str(e)) from e
        except ValidationError as e:
            logger.debug("command failed", exc_info=True)
            problems = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())
            raise click.ClickException(f"invalid {e.title}: {problems}") from e

    return wrapper


def read_graph(path: Path, directed: bool) -> Graph:
    with path.open("rb") as handle:
        return load_edge_list(handle, directed)


def settings_of(ctx: click.Context) -> Settings:
    return ctx.find_object(Settings) or Settings()


def comma_floats(ctx, param, value: str | None) -> list[float] | None:
    if value is None:
        return None
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}") from None


graph_option = click.option("--graph", "graph_path", required=True,
                            type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Edge-list file.")
directed_option = click.option("--directed/--undirected", default=False, show_default=True,
                               help="Treat each line as one arc instead of an undirected edge.")
phi_option = click.option("--phi", default="fixed:0.5", show_default=True,
                          help="Threshold distribution: fixed:P, uniform:LO,HI or normal:MEAN,STD.")
seed_option = click.option("--seed", default=0, show_default=True, type=click.IntRange(min=0), help="Random seed.")
prec_option = click.option("--prec", default=0.01, show_default=True, type=float, help="Triangle grid precision.")


def comma_coverages(ctx, param, value: str | None) -> list[float] | None:
    coverages = comma_floats(ctx, param, value)
    for cov in coverages or ():
        if not 0.0 < cov <= 1.0:
            raise click.BadParameter(f"coverage must lie in (0, 1], got {cov:g}")
    return coverages


def comma_ints(ctx, param, value: str | None) -> list[int] | None:
    if value is None:
        return None
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated whole numbers, got {value!r}") from None
