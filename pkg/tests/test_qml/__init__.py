"""Machine-learning estimator tests."""
