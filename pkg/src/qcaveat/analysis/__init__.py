"""Error ledgers, complexity models and scaling experiments."""

from qcaveat.analysis.cost import CostModel, CostVariant, counting_cost, hhl_cost
from qcaveat.analysis.errors import ErrorReport, ModeError, accuracy_budget, error_report
from qcaveat.analysis.experiments import GridPoint, ResultTable, Scenario, ScenarioParameters
from qcaveat.analysis.fitting import loglog_slope
from qcaveat.analysis.scenarios import (
    ExperimentSpec,
    get_scenario,
    list_scenarios,
    scaling_experiment,
)

__all__ = [
    "CostModel",
    "CostVariant",
    "ErrorReport",
    "ExperimentSpec",
    "GridPoint",
    "ModeError",
    "ResultTable",
    "Scenario",
    "ScenarioParameters",
    "accuracy_budget",
    "counting_cost",
    "error_report",
    "get_scenario",
    "hhl_cost",
    "list_scenarios",
    "loglog_slope",
    "scaling_experiment",
]
