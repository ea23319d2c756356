"""Statevector simulator tests."""
