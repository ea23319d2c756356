"""Scenario catalog commands."""

from __future__ import annotations

import json
from pathlib import Path
from typing import cast

import click
from rich.console import Console
from rich.table import Table

from qcaveat.analysis.scenarios import get_scenario, list_scenarios
from qcaveat.cli.config_file import render_config_template
from qcaveat.cli.run import fail
from qcaveat.config.defaults import DEFAULT_SEED
from qcaveat.exceptions import QcaveatError
from qcaveat.utils.formatting import truncate_text
from qcaveat.utils.rng import MAX_SEED

console = Console()


def scenario_catalog() -> list[dict[str, object]]:
    """Every registered scenario with its columns and parameter schema, sorted by name."""
    return [
        {
            "name": scenario.name,
            "summary": scenario.summary,
            "columns": list(scenario.columns),
            "parameters": scenario.parameter_docs(),
        }
        for scenario in list_scenarios()
    ]


@click.command("list")
@click.option("--json", "as_json", is_flag=True, help="Emit the catalog as JSON")
@click.option("--details", is_flag=True, help="Show every parameter of every scenario")
def list_command(as_json: bool, details: bool) -> None:
    """List registered scenarios and their parameters."""
    catalog = scenario_catalog()

    if as_json:
        click.echo(json.dumps(catalog, indent=2))
        return

    table = Table(title="Scenarios", show_lines=details)
    table.add_column("Name", style="cyan", no_wrap=True)
    table.add_column("Summary")
    table.add_column("Parameters", style="dim")

    for entry in catalog:
        params = cast(list[dict[str, str]], entry["parameters"])
        if details:
            text = "\n".join(
                f"{p['name']}: {p['type']} = {p['default']}  {p['description']}" for p in params
            )
        else:
            text = truncate_text(", ".join(p["name"] for p in params), max_length=60)
        table.add_row(str(entry["name"]), str(entry["summary"]), text)

    console.print(table)


@click.command()
@click.argument("name")
@click.option(
    "--seed",
    type=click.IntRange(0, MAX_SEED),
    default=DEFAULT_SEED,
    show_default=True,
    help="Seed written into the config",
)
@click.option(
    "-o",
    "--output",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Write the config to a file instead of stdout",
)
@click.pass_context
def template(ctx: click.Context, name: str, seed: int, output: Path | None) -> None:
    """Print a minimal config for scenario NAME with default parameters."""
    try:
        text = render_config_template(get_scenario(name), seed=seed)
    except QcaveatError as e:
        fail(ctx, e)
        return

    if output is None:
        click.echo(text, nl=False)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")
    console.print(f"[green]✓[/green] Config written to [bold]{output}[/bold]")
