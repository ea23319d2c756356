"""Quantum phase estimation."""

from qcaveat.estimation.phase import (
    QpeConfig,
    QpeOutcome,
    TimeScalePolicy,
    check_decodable,
    choose_time_scale,
    closed_form_probabilities,
    decode_all,
    decode_eigenvalue,
    qpe_circuit,
    qpe_distribution_closed_form,
    qpe_mixture_closed_form,
    round_to_grid,
)

__all__ = [
    "QpeConfig",
    "QpeOutcome",
    "TimeScalePolicy",
    "check_decodable",
    "choose_time_scale",
    "closed_form_probabilities",
    "decode_all",
    "decode_eigenvalue",
    "qpe_circuit",
    "qpe_distribution_closed_form",
    "qpe_mixture_closed_form",
    "round_to_grid",
]
