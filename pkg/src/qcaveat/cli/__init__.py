"""Command-line interface for qcaveat."""

from qcaveat.cli.main import cli

__all__ = ["cli"]
