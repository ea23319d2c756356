"""qcaveat test suite."""
