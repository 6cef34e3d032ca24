"""Genus Engine - exact invariants, genus bounds and examples for hyperelliptic fibrations."""

__version__ = "1.0.0"
