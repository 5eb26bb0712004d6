"""Exact computations with weighted train tracks, a flat-surface map and ray words."""

__version__ = "0.1.0"
