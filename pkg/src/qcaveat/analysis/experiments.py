"""Scenario base class, grid runner and result tables."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, ClassVar, get_origin

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, ValidationInfo, field_validator

from qcaveat.exceptions import AnalysisError, ConfigParseError
from qcaveat.utils.logging import get_logger
from qcaveat.utils.rng import spawn_seeds

logger = get_logger(__name__)


@dataclass
class ResultTable:
    """One row per grid point, assembled in grid order."""

    scenario: str
    seed: int
    columns: tuple[str, ...]
    rows: list[dict[str, Any]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        """All values of one column."""
        if name not in self.columns:
            raise KeyError(f"No column {name!r} in {self.scenario} table")
        return np.array([row[name] for row in self.rows])


@dataclass(frozen=True)
class GridPoint:
    """One grid value with its derived seed."""

    index: int
    value: Any
    seed: int  # Child seed for this point
    base_seed: int  # Experiment seed, shared by every point


class ScenarioParameters(BaseModel):
    """Base for scenario parameter models: strict keys, comma-separated lists."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    @field_validator("*", mode="before")
    @classmethod
    def split_lists(cls, v: Any, info: ValidationInfo) -> Any:
        """Accept "1, 2, 3" for list-valued fields."""
        if info.field_name is None or not isinstance(v, str):
            return v
        annotation = cls.model_fields[info.field_name].annotation
        if get_origin(annotation) is list:
            return [item.strip() for item in v.split(",") if item.strip()]
        return v


class Scenario(ABC):
    """A registered scaling experiment."""

    name: ClassVar[str]
    summary: ClassVar[str]
    parameters_model: ClassVar[type[ScenarioParameters]]
    columns: ClassVar[tuple[str, ...]]

    def parse(self, raw: Mapping[str, Any]) -> ScenarioParameters:
        """
        Validate raw parameters.

        Raises:
            ConfigParseError: Naming the first offending parameter.
        """
        try:
            return self.parameters_model.model_validate(dict(raw))
        except ValidationError as e:
            first = e.errors()[0]
            loc = ".".join(str(part) for part in first["loc"])
            raise ConfigParseError(
                f"Invalid parameter for {self.name}: {first['msg']}",
                field=f"parameters.{loc}" if loc else "parameters",
            ) from e

    def parameter_docs(self) -> list[dict[str, str]]:
        """Name, type, default and description of every parameter."""
        docs = []
        for name, info in self.parameters_model.model_fields.items():
            annotation = info.annotation
            type_name = getattr(annotation, "__name__", None) or str(annotation)
            if get_origin(annotation) is list:
                type_name = str(annotation).replace("typing.", "")
            docs.append(
                {
                    "name": name,
                    "type": type_name,
                    "default": _default_text(info.get_default(call_default_factory=True)),
                    "description": info.description or "",
                }
            )
        return docs

    def defaults(self) -> ScenarioParameters:
        return self.parameters_model()

    @abstractmethod
    def grid(self, params: Any) -> list[Any]:
        """Grid values, in output order."""
        pass

    @abstractmethod
    def evaluate(self, params: Any, point: GridPoint) -> dict[str, Any]:
        """Compute one row."""
        pass

    def run(self, params: ScenarioParameters, seed: int, threads: int = 1) -> ResultTable:
        """
        Evaluate every grid point.

        Points may run on worker threads; rows come back in grid order.
        """
        values = self.grid(params)
        seeds = spawn_seeds(seed, len(values))
        points = [
            GridPoint(index=i, value=v, seed=s, base_seed=seed)
            for i, (v, s) in enumerate(zip(values, seeds, strict=True))
        ]
        logger.info(f"Running {self.name}: {len(points)} grid points, {threads} thread(s)")

        def evaluate(point: GridPoint) -> dict[str, Any]:
            row = self.evaluate(params, point)
            logger.debug(f"{self.name}[{point.index}] done")
            return row

        if threads > 1 and len(points) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                rows = list(pool.map(evaluate, points))
        else:
            rows = [evaluate(point) for point in points]

        for row in rows:
            if tuple(row) != self.columns:
                raise AnalysisError(
                    f"{self.name} produced columns {tuple(row)}, expected {self.columns}"
                )
        return ResultTable(scenario=self.name, seed=seed, columns=self.columns, rows=rows)


def _default_text(value: Any) -> str:
    if isinstance(value, list | tuple):
        return ", ".join(str(item) for item in value)
    return str(value)
