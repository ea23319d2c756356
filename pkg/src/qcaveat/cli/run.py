"""Run a scenario config and write its report."""

from __future__ import annotations

from pathlib import Path

import click
from rich.console import Console

from qcaveat.analysis.scenarios import scaling_experiment
from qcaveat.cli.config_file import ScenarioConfig, load_config
from qcaveat.config import get_settings
from qcaveat.config.defaults import OUTPUT_FORMATS
from qcaveat.exceptions import ConfigurationError, PreconditionError, QcaveatError
from qcaveat.reports import write_table
from qcaveat.utils.logging import get_logger
from qcaveat.utils.rng import MAX_SEED

console = Console()
logger = get_logger(__name__)

EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3

_EXTENSIONS = {"csv": ".csv", "json": ".json", "markdown": ".md"}


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the CLI exit code contract."""
    if isinstance(error, ConfigurationError):
        return EXIT_CONFIG
    if isinstance(error, PreconditionError):
        return EXIT_PRECONDITION
    return EXIT_FAILURE


def error_line(error: BaseException) -> str:
    """Single machine-parseable stderr line for a failure."""
    field = getattr(error, "field", None) or "-"
    message = str(error).replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return (
        f"qcaveat: error exit={exit_code_for(error)} kind={type(error).__name__} "
        f'field={field} message="{message}"'
    )


def fail(ctx: click.Context, error: BaseException) -> None:
    """Report an error on stderr and exit with its code."""
    click.echo(error_line(error), err=True)
    ctx.exit(exit_code_for(error))


def resolve_output(
    config: ScenarioConfig, out: Path | None, fmt: str | None
) -> tuple[Path, str]:
    """
    Pick the report path and format.

    Command-line options win over the config's [output] section, which wins
    over settings. A format left open is inferred from the path suffix.
    """
    path = out or config.output.path
    chosen = fmt or config.output.format
    if chosen is None and path is not None:
        by_suffix = {suffix: name for name, suffix in _EXTENSIONS.items()}
        chosen = by_suffix.get(path.suffix.lower())
    if chosen is None:
        chosen = get_settings().output.format
    chosen = chosen.lower()
    if path is None:
        path = get_settings().output.directory / f"{config.scenario}{_EXTENSIONS[chosen]}"
    return path, chosen


@click.command()
@click.argument("config_path", type=click.Path(path_type=Path, dir_okay=False))
@click.option(
    "--seed",
    type=click.IntRange(0, MAX_SEED),
    default=None,
    help="Override the config seed (unsigned 64-bit)",
)
@click.option(
    "--out",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Report path (overrides [output] path)",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(OUTPUT_FORMATS, case_sensitive=False),
    default=None,
    help="Report format (overrides [output] format)",
)
@click.option(
    "--threads",
    type=click.IntRange(min=1),
    default=None,
    help="Worker threads for grid points (default: QCAVEAT_THREADS)",
)
@click.pass_context
def run(
    ctx: click.Context,
    config_path: Path,
    seed: int | None,
    out: Path | None,
    fmt: str | None,
    threads: int | None,
) -> None:
    """Run the scenario described by CONFIG_PATH and write its report."""
    verbose = ctx.obj.get("verbose", False) if ctx.obj else False

    try:
        config = load_config(config_path)
        spec = config.to_spec(seed)
        path, chosen = resolve_output(config, out, fmt)

        logger.info(f"Running {spec.scenario} with seed {spec.seed}")
        table = scaling_experiment(spec, threads=threads)
        write_table(table, path, chosen)
    except QcaveatError as e:
        logger.error(f"{type(e).__name__}: {e}")
        fail(ctx, e)
        return
    except Exception as e:
        logger.exception("Scenario failed with unexpected error")
        fail(ctx, e)
        return

    console.print(
        f"[green]✓[/green] {spec.scenario}: {len(table)} rows written to [bold]{path}[/bold]"
    )
    if verbose:
        console.print(f"[dim]seed={spec.seed} format={chosen} path={path.absolute()}[/dim]")
