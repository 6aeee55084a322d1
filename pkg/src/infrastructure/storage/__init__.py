"""
Artifact storage for experiment outputs.

Local directories for runs, an in-memory store for tests.
"""

from .client import (
    ArtifactStore,
    InMemoryArtifactStore,
    LocalArtifactStore,
    StorageError,
    create_artifact_store,
)

__all__ = [
    "ArtifactStore",
    "InMemoryArtifactStore",
    "LocalArtifactStore",
    "StorageError",
    "create_artifact_store",
]
