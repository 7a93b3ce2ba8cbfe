"""Exact positivity cones of canonical classes on A x A."""

__version__ = "0.1.0"
