"""HHL solver tests."""
