"""
qcaveat - Desk-scale quantum algorithm laboratory.

Simulates quantum phase estimation and the HHL linear-system pipeline on dense
statevectors, checks them against exact classical linear algebra, and measures
how state-level errors are amplified into classical quantities.
"""

__version__ = "1.0.0"
