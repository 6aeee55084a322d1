"""
Deterministic SVG figures.
"""

from .figures import render_family, render_field

__all__ = ["render_family", "render_field"]
