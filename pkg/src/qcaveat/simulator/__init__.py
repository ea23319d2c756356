"""Dense statevector simulator."""

from qcaveat.simulator.operations import (
    MeasurementRecord,
    ProbabilityTable,
    apply_conditioned,
    apply_controlled_power,
    apply_controlled_swap,
    apply_unitary,
    hadamard,
    inverse_qft,
    measure,
    postselect,
    prepare_state,
    product_state,
    qft,
)
from qcaveat.simulator.sampling import (
    ShotEstimate,
    count_successes,
    hoeffding_halfwidth,
    sample,
)
from qcaveat.simulator.state import QuantumState, RegisterLayout

__all__ = [
    "MeasurementRecord",
    "ProbabilityTable",
    "QuantumState",
    "RegisterLayout",
    "ShotEstimate",
    "apply_conditioned",
    "apply_controlled_power",
    "apply_controlled_swap",
    "apply_unitary",
    "count_successes",
    "hadamard",
    "hoeffding_halfwidth",
    "inverse_qft",
    "measure",
    "postselect",
    "prepare_state",
    "product_state",
    "qft",
    "sample",
]
