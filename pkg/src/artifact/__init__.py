"""Colored graphs from prescribed bubbles, edge-colored maps and stuffed Walsh maps."""

__version__ = "0.1.0"
