"""
Laboratory configuration using Pydantic settings.

Configuration comes from QCLAB_* environment variables with defaults
matching the acceptance tolerances.
"""

from .settings import Settings, get_settings

__all__ = ["Settings", "get_settings"]
