"""Quantum machine-learning estimators and their classical amplification."""

from qcaveat.qml.datasets import Dataset, gram_matrix
from qcaveat.qml.estimators import (
    ClassificationEstimate,
    RegressionPrediction,
    TraceEstimate,
    build_lssvm_system,
    classification_distance,
    classification_state,
    classification_target,
    hadamard_test,
    regression_predict,
    swap_test,
    swap_test_acceptance,
    trace_estimate,
)

__all__ = [
    "ClassificationEstimate",
    "Dataset",
    "RegressionPrediction",
    "TraceEstimate",
    "build_lssvm_system",
    "classification_distance",
    "classification_state",
    "classification_target",
    "gram_matrix",
    "hadamard_test",
    "regression_predict",
    "swap_test",
    "swap_test_acceptance",
    "trace_estimate",
]
