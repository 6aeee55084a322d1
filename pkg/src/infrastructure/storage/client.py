"""
Artifact store for CSV, JSON and SVG outputs.

Writes are atomic: content goes to a temporary file in the target
directory and is moved into place with os.replace, so readers never see
a partial artifact.
"""

import logging
import os
import tempfile
from pathlib import Path
from typing import Protocol

logger = logging.getLogger(__name__)


class StorageError(Exception):
    """Raised when an artifact cannot be written or read."""
    pass


class ArtifactStore(Protocol):
    """Protocol for artifact persistence keyed by relative paths."""

    def write_text(self, key: str, content: str) -> str:
        """Store content under key and return its location."""
        ...

    def read_text(self, key: str) -> str:
        """Content stored under key."""
        ...

    def exists(self, key: str) -> bool:
        ...

    def keys(self) -> list[str]:
        """All stored keys, sorted."""
        ...


def _check_key(key: str) -> str:
    path = Path(key)
    if not key or path.is_absolute() or ".." in path.parts:
        raise StorageError(f"invalid artifact key: {key!r}")
    return path.as_posix()


class LocalArtifactStore:
    """Artifacts as files under a root directory."""

    def __init__(self, root: str | Path) -> None:
        self._root = Path(root)

    @property
    def root(self) -> Path:
        return self._root

    def write_text(self, key: str, content: str) -> str:
        """Atomic write: temp file in the same directory, then os.replace."""
        target = self._root / _check_key(key)
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                    fh.write(content)
                os.replace(tmp, target)
            except BaseException:
                Path(tmp).unlink(missing_ok=True)
                raise
        except OSError as e:
            logger.error("Failed to write artifact", extra={"key": key, "error": str(e)})
            raise StorageError(f"Write failed for {key}: {e}") from e

        logger.debug("Wrote artifact", extra={"key": key, "size_bytes": len(content)})
        return str(target)

    def read_text(self, key: str) -> str:
        target = self._root / _check_key(key)
        try:
            return target.read_text(encoding="utf-8")
        except OSError as e:
            raise StorageError(f"Read failed for {key}: {e}") from e

    def exists(self, key: str) -> bool:
        return (self._root / _check_key(key)).is_file()

    def keys(self) -> list[str]:
        if not self._root.exists():
            return []
        return sorted(
            p.relative_to(self._root).as_posix()
            for p in self._root.rglob("*")
            if p.is_file() and not p.name.endswith(".tmp")
        )


class InMemoryArtifactStore:
    """Dictionary-backed store for tests and dry runs."""

    def __init__(self) -> None:
        self._artifacts: dict[str, str] = {}

    def write_text(self, key: str, content: str) -> str:
        key = _check_key(key)
        self._artifacts[key] = content
        return f"memory://{key}"

    def read_text(self, key: str) -> str:
        key = _check_key(key)
        if key not in self._artifacts:
            raise StorageError(f"No artifact stored under {key}")
        return self._artifacts[key]

    def exists(self, key: str) -> bool:
        return _check_key(key) in self._artifacts

    def keys(self) -> list[str]:
        return sorted(self._artifacts)


def create_artifact_store(root: str | Path | None = None) -> ArtifactStore:
    """Factory: local store under root, in-memory store when root is None."""
    if root is None:
        logger.info("Using in-memory artifact store")
        return InMemoryArtifactStore()
    return LocalArtifactStore(root)
