"""Register layouts and immutable statevectors.

Qubits are ordered by register in layout order, and big-endian within each
register: the first register holds the most significant bits of the flat
amplitude index. ``QuantumState.tensor`` exposes one axis per register.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict

from qcaveat.config import get_settings
from qcaveat.config.defaults import STATE_NORM_TOLERANCE
from qcaveat.exceptions import (
    ConfigParseError,
    DimensionMismatchError,
    NormalizationError,
    PreconditionError,
    QubitLimitError,
)


@dataclass(frozen=True)
class RegisterLayout:
    """Ordered, named, contiguous qubit registers."""

    registers: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        registers = tuple((str(name), int(width)) for name, width in self.registers)
        if not registers:
            raise PreconditionError("Layout must contain at least one register")
        names = [name for name, _ in registers]
        if len(set(names)) != len(names):
            raise PreconditionError(f"Duplicate register names in layout: {names}")
        for name, width in registers:
            if width < 1:
                raise PreconditionError(f"Register {name!r} must have width >= 1, got {width}")

        total = sum(width for _, width in registers)
        limit = get_settings().simulation.max_qubits
        if total > limit:
            raise QubitLimitError(total, limit)
        object.__setattr__(self, "registers", registers)

    @classmethod
    def of(cls, mapping: Mapping[str, int] | None = None, **widths: int) -> RegisterLayout:
        """Build a layout from an ordered mapping or keyword widths."""
        items = list((mapping or {}).items()) + list(widths.items())
        return cls(tuple(items))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.registers)

    @property
    def num_qubits(self) -> int:
        return sum(width for _, width in self.registers)

    @property
    def dimension(self) -> int:
        return 1 << self.num_qubits

    @property
    def shape(self) -> tuple[int, ...]:
        """Tensor shape with one axis of size 2^width per register."""
        return tuple(1 << width for _, width in self.registers)

    def width(self, name: str) -> int:
        return self.registers[self.axis(name)][1]

    def axis(self, name: str) -> int:
        """Axis index of a register in the state tensor."""
        for index, (register, _) in enumerate(self.registers):
            if register == name:
                return index
        raise PreconditionError(f"Unknown register {name!r}; layout has {list(self.names)}")

    def qubit_range(self, name: str) -> range:
        """Global qubit indices (0 = most significant) covered by a register."""
        start = 0
        for register, width in self.registers:
            if register == name:
                return range(start, start + width)
            start += width
        raise PreconditionError(f"Unknown register {name!r}; layout has {list(self.names)}")

    def as_dict(self) -> dict[str, int]:
        return dict(self.registers)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self.registers)


class StateRecord(BaseModel):
    """JSON dump of a statevector: {"layout": {...}, "re": [...], "im": [...]}."""

    model_config = ConfigDict(extra="forbid")

    layout: dict[str, int]
    re: list[float]
    im: list[float]


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Normalized complex amplitudes over a register layout."""

    layout: RegisterLayout
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.size != self.layout.dimension:
            raise DimensionMismatchError(
                f"Layout with {self.layout.num_qubits} qubits needs {self.layout.dimension} "
                f"amplitudes, got {amplitudes.size}"
            )
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > STATE_NORM_TOLERANCE:
            raise NormalizationError(f"State norm is {norm!r}, expected 1")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def num_qubits(self) -> int:
        return self.layout.num_qubits

    @property
    def tensor(self) -> np.ndarray:
        """Read-only view with one axis per register."""
        return self.amplitudes.reshape(self.layout.shape)

    def with_tensor(self, tensor: np.ndarray) -> QuantumState:
        """New state over the same layout from a register tensor."""
        return QuantumState(self.layout, np.asarray(tensor).reshape(-1))

    def project(self, fixed: Mapping[str, int]) -> np.ndarray:
        """
        Unnormalized amplitudes of the remaining registers with some registers fixed.

        Args:
            fixed: Register name to basis value.

        Returns:
            Flat amplitude array over the unfixed registers, in layout order.
        """
        index: list[Any] = [slice(None)] * len(self.layout.registers)
        for name, value in fixed.items():
            axis = self.layout.axis(name)
            size = self.layout.shape[axis]
            if not 0 <= int(value) < size:
                raise PreconditionError(f"Value {value} out of range for register {name!r}")
            index[axis] = int(value)
        return np.array(self.tensor[tuple(index)]).reshape(-1)

    def to_json(self, indent: int | None = 2) -> str:
        record = StateRecord(
            layout=self.layout.as_dict(),
            re=self.amplitudes.real.tolist(),
            im=self.amplitudes.imag.tolist(),
        )
        return record.model_dump_json(indent=indent)

    @classmethod
    def from_json(cls, text: str) -> QuantumState:
        try:
            record = StateRecord.model_validate_json(text)
        except ValueError as e:
            raise ConfigParseError(f"Invalid state JSON: {e}") from e
        if len(record.re) != len(record.im):
            raise ConfigParseError("'re' and 'im' must have equal length", field="im")
        amplitudes = np.array(record.re) + 1j * np.array(record.im)
        return cls(RegisterLayout.of(record.layout), amplitudes)

    def __repr__(self) -> str:
        return f"QuantumState(layout={self.layout.as_dict()})"
