"""Entry-point module for the command line prefixes, called in case you use `python -m civd`."""
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import rich_click as click
from loguru import logger

from civd import __version__
from civd.server.commands import cmd_build, cmd_query, cmd_render_svg, cmd_validate
from civd.server.configuration import load_run_config
from civd.utils.exceptions import CivdError, InvalidPointError

INPUT_ERROR = 3
VALIDATION_FAILED = 2


@contextmanager
def exit_on_error():
    """Turn library errors into the input-error exit code."""
    try:
        yield
    except CivdError as error:
        logger.error(f"{type(error).__name__}: {error}")
        sys.exit(INPUT_ERROR)


def parse_point(text: str) -> np.ndarray:
    try:
        return np.array([float(value) for value in text.split(",")])
    except ValueError as error:
        msg = f"'{text}' is not a comma-separated list of coordinates"
        raise InvalidPointError(msg) from error


class CivdGroup(click.RichGroup):
    """Command group reporting usage errors with the input-error exit code."""

    def main(self, *args, standalone_mode: bool = True, **kwargs):
        if not standalone_mode:
            return super().main(*args, standalone_mode=False, **kwargs)
        try:
            return super().main(*args, standalone_mode=False, **kwargs)
        except click.UsageError as error:
            error.show()
            sys.exit(INPUT_ERROR)
        except click.ClickException as error:
            error.show()
            sys.exit(error.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(1)


@click.group(cls=CivdGroup)
@click.option("-l", "--log", "logfile", type=click.Path(), default=None, help="Save logs to file.")
@click.option("-d", "--debug", is_flag=True, help="Print debug info.")
@click.version_option(__version__)
def main(logfile, debug):
    """Approximate clustering-induced Voronoi diagrams.

    Build a diagram from a point file, query it, validate it against exact oracles or render it as SVG.
    """
    if not debug:
        # Set stderr to info
        logger.remove()
        logger.add(sys.stderr, level="INFO")

    logger.debug(f"Starting civd v. {__version__}!")
    if logfile:
        logger.add(Path(logfile), level="DEBUG")


@main.command()
@click.option("-c", "--config", "config_file", type=click.Path(path_type=Path), help="TOML run file.")
@click.option("-i", "--input", "input_file", type=click.Path(path_type=Path), help="Points as CSV or JSON.")
@click.option("-o", "--output", type=click.Path(path_type=Path), help="Artifact file to write.")
@click.option("--model", type=click.Choice(["vector", "density"]), help="Influence model.")
@click.option("--t", "t", type=float, help="Force exponent of the vector model.")
@click.option("--dim", type=int, help="Expected point dimension.")
@click.option("--epsilon", type=float, help="Approximation error budget.")
@click.option("--beta", type=float, help="Override the derived tolerance (voids the guarantee).")
@click.option("--locality-constant", type=float, help="Constant factor of the vector perturbation bound.")
@click.option("--seed", type=int, help="Random seed.")
@click.option("--render", type=click.Path(path_type=Path), help="Also write an SVG drawing (2-D only).")
@click.option("--slow-find", is_flag=True, help="Use the literal effective-cover search.")
def build(config_file, input_file, output, model, t, dim, epsilon, beta, locality_constant, seed, render, slow_find):
    """Build a CIVD from a point file."""
    with exit_on_error():
        config = load_run_config(
            config_file,
            input=input_file,
            output=output,
            model=model,
            t=t,
            dim=dim,
            epsilon=epsilon,
            beta=beta,
            locality_constant=locality_constant,
            seed=seed,
            render=render,
            fast_find=False if slow_find else None,
        )
        civd = cmd_build(config)
    if civd.stats is not None:
        click.echo(civd.stats.model_dump_json())


@main.command()
@click.argument("artifact", type=click.Path(path_type=Path))
@click.option("-p", "--point", "points", multiple=True, required=True, help="Query point as x,y[,...]; repeatable.")
def query(artifact, points):
    """Maximum influence site of each query point."""
    with exit_on_error():
        queries = [parse_point(point) for point in points]
        results = cmd_query(artifact, queries)
    for result in results:
        click.echo(result.model_dump_json())


@main.command()
@click.argument("artifact", type=click.Path(path_type=Path))
@click.option("-c", "--config", "config_file", type=click.Path(path_type=Path), help="TOML run file.")
@click.option("--samples", type=int, help="Number of random queries.")
@click.option("--seed", type=int, help="Random seed.")
@click.option("--threads", type=int, help="Parallel oracle evaluations (default: CIVD_THREADS or 1).")
@click.option("-r", "--report", type=click.Path(path_type=Path), help="JSON report file.")
def validate(artifact, config_file, samples, seed, threads, report):
    """Compare sampled queries with the exact oracle; exit code 2 on any failure."""
    with exit_on_error():
        config = load_run_config(config_file, samples=samples, seed=seed, threads=threads)
        result = cmd_validate(artifact, config.samples, config.seed, config.threads, report)
    click.echo(result.summary.model_dump_json(by_alias=True))
    if not result.summary.passed:
        sys.exit(VALIDATION_FAILED)


@main.command()
@click.argument("artifact", type=click.Path(path_type=Path))
@click.option("-o", "--output", type=click.Path(path_type=Path), required=True, help="SVG file to write.")
def render(artifact, output):
    """Draw a 2-D diagram as SVG."""
    with exit_on_error():
        cmd_render_svg(artifact, output)


if __name__ == "__main__":
    main()
