"""Scenario configuration files.

A config is sectioned key/value text::

    [scenario]
    name = t_sweep
    seed = 7

    [parameters]
    t_fractions = 1, 0.5, 0.25

    [output]
    path = reports/t_sweep.csv
    format = csv

Unknown sections or keys are errors. Parameter values are validated by the
scenario's own parameter model.
"""

from __future__ import annotations

import configparser
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from qcaveat.analysis.experiments import Scenario, ScenarioParameters
from qcaveat.analysis.scenarios import ExperimentSpec, get_scenario
from qcaveat.config.defaults import DEFAULT_SEED, OUTPUT_FORMATS
from qcaveat.exceptions import ConfigParseError
from qcaveat.utils.rng import MAX_SEED

_SECTION_KEYS: dict[str, tuple[str, ...] | None] = {
    "scenario": ("name", "seed"),
    "parameters": None,  # Checked by the scenario's parameter model
    "output": ("path", "format"),
}


class OutputConfig(BaseModel):
    """Where and how to write the result table."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    path: Path | None = None
    format: str | None = None


class ScenarioConfig(BaseModel):
    """A fully validated scenario config."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    scenario: str
    seed: int = Field(default=DEFAULT_SEED, ge=0, le=MAX_SEED)
    parameters: dict[str, str] = Field(default_factory=dict)
    output: OutputConfig = Field(default_factory=OutputConfig)

    def to_spec(self, seed: int | None = None) -> ExperimentSpec:
        """Experiment spec, optionally with an overriding seed."""
        return ExperimentSpec(
            scenario=self.scenario,
            parameters=dict(self.parameters),
            seed=self.seed if seed is None else seed,
        )


def _parser() -> configparser.ConfigParser:
    parser = configparser.ConfigParser(
        strict=True, interpolation=None, empty_lines_in_values=False
    )
    # Keys are case sensitive (M, N)
    parser.optionxform = str  # type: ignore[assignment,method-assign]
    return parser


def _parse_seed(text: str) -> int:
    try:
        seed = int(text.strip())
    except ValueError:
        raise ConfigParseError(
            f"Seed must be an integer, got {text!r}", field="scenario.seed"
        ) from None
    if not 0 <= seed <= MAX_SEED:
        raise ConfigParseError(f"Seed must be in [0, 2^64 - 1], got {seed}", field="scenario.seed")
    return seed


def parse_config(text: str, source: str = "<string>") -> ScenarioConfig:
    """
    Parse and validate config text.

    Args:
        text: INI-style config text.
        source: Name used in error messages.

    Returns:
        The validated ScenarioConfig.

    Raises:
        ConfigParseError: On syntax errors, unknown sections or keys, or
            invalid values. The error names the offending field.
        UnknownScenarioError: If the scenario name is not registered.
    """
    parser = _parser()
    try:
        parser.read_string(text, source=source)
    except configparser.Error as e:
        raise ConfigParseError(f"Malformed config {source}: {e}", field="config") from e

    if parser.defaults():
        key = next(iter(parser.defaults()))
        raise ConfigParseError(
            f"Keys outside a section are not allowed: {key}", field=f"DEFAULT.{key}"
        )

    for section in parser.sections():
        if section not in _SECTION_KEYS:
            raise ConfigParseError(
                f"Unknown section [{section}]; expected one of {sorted(_SECTION_KEYS)}",
                field=section,
            )
        allowed = _SECTION_KEYS[section]
        if allowed is None:
            continue
        for key in parser[section]:
            if key not in allowed:
                raise ConfigParseError(
                    f"Unknown key {key!r} in [{section}]", field=f"{section}.{key}"
                )

    if not parser.has_section("scenario"):
        raise ConfigParseError("Missing [scenario] section", field="scenario")
    if "name" not in parser["scenario"]:
        raise ConfigParseError("Missing scenario name", field="scenario.name")

    name = parser["scenario"]["name"].strip()
    seed = DEFAULT_SEED
    if "seed" in parser["scenario"]:
        seed = _parse_seed(parser["scenario"]["seed"])
    parameters = dict(parser["parameters"]) if parser.has_section("parameters") else {}

    output: dict[str, Any] = {}
    if parser.has_section("output"):
        section = parser["output"]
        if "path" in section:
            output["path"] = Path(section["path"].strip())
        if "format" in section:
            fmt = section["format"].strip().lower()
            if fmt not in OUTPUT_FORMATS:
                raise ConfigParseError(
                    f"Unknown output format {fmt!r}; expected one of {list(OUTPUT_FORMATS)}",
                    field="output.format",
                )
            output["format"] = fmt

    # Resolves the name and validates parameters; both raise with a field
    scenario = get_scenario(name)
    scenario.parse(parameters)

    try:
        return ScenarioConfig(
            scenario=name,
            seed=seed,
            parameters=parameters,
            output=OutputConfig(**output),
        )
    except ValidationError as e:  # pragma: no cover - fields are pre-validated
        raise ConfigParseError(str(e), field="config") from e


def load_config(path: Path) -> ScenarioConfig:
    """
    Read and validate a config file.

    Raises:
        ConfigParseError: If the file cannot be read or is invalid.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigParseError(f"Cannot read config {path}: {e}", field="config") from e
    return parse_config(text, source=str(path))


def _value_text(value: Any) -> str:
    if isinstance(value, list | tuple):
        return ", ".join(str(item) for item in value)
    return str(value)


def render_config_template(scenario: Scenario | str, seed: int = DEFAULT_SEED) -> str:
    """
    Minimal config running a scenario with its default parameters.

    Raises:
        UnknownScenarioError: If a name is given that is not registered.
    """
    if isinstance(scenario, str):
        scenario = get_scenario(scenario)
    defaults: ScenarioParameters = scenario.defaults()

    lines = ["[scenario]", f"name = {scenario.name}", f"seed = {seed}", "", "[parameters]"]
    for doc in scenario.parameter_docs():
        if doc["description"]:
            lines.append(f"# {doc['description']}")
        lines.append(f"{doc['name']} = {_value_text(getattr(defaults, doc['name']))}")
    lines.extend(["", "[output]", f"format = {OUTPUT_FORMATS[0]}", ""])
    return "\n".join(lines)


__all__ = [
    "OutputConfig",
    "ScenarioConfig",
    "load_config",
    "parse_config",
    "render_config_template",
]
