"""Exact q-series, certification and evaluation of the 24-dimensional magic function."""

__version__ = "1.0.0"
