"""Minimal graphs over hyperbolic polygonal domains and their conjugate towers."""

__version__ = "0.1.0"
