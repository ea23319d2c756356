"""Main CLI entry point for qcaveat."""

import click

from qcaveat import __version__
from qcaveat.cli.run import run
from qcaveat.cli.scenarios import list_command, template
from qcaveat.config import get_settings
from qcaveat.utils.logging import add_log_file, set_log_level, setup_logging


@click.group()
@click.version_option(__version__, prog_name="qcaveat")
@click.option("-v", "--verbose", is_flag=True, help="Enable verbose output")
@click.pass_context
def cli(ctx: click.Context, verbose: bool) -> None:
    """
    qcaveat - QPE and HHL error-amplification laboratory.

    Runs seeded scaling experiments that measure how state-level errors are
    amplified into classical quantities, and writes them as CSV, JSON or
    Markdown tables.
    """
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose

    settings = get_settings()
    log_level = "DEBUG" if verbose else settings.logging.level
    setup_logging(level=log_level)
    set_log_level(log_level)
    if settings.logging.file is not None:
        add_log_file(
            settings.logging.file,
            level=log_level,
            max_size_mb=settings.logging.max_size_mb,
            backup_count=settings.logging.backup_count,
        )


# Register commands
cli.add_command(run)
cli.add_command(list_command)
cli.add_command(template)


if __name__ == "__main__":
    cli()
