"""Balanced Index influence maximization with learned parameters."""

__version__ = "1.0.0"
