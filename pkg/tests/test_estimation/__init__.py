"""Phase estimation tests."""
