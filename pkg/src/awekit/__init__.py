"""Sizing and flight-simulation toolkit for a small three-line kite ground unit."""

__version__ = "0.1.0"
