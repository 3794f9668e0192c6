"""Content-addressed result cache.

Keys are SHA-256 hashes of the canonicalized request; entries are JSON
files carrying a tool-version stamp and the serialized result.  Writes go
through a temporary file and an atomic rename, so concurrent writers can
race harmlessly.  Corrupted or stale entries are evicted and recomputed,
never trusted.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .schema import canonical_json


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME")
    root = Path(base) if base else Path.home() / ".cache"
    return root / "swfcalc"


def resolve_cache_dir(flag: str | None) -> Path:
    """Precedence: --cache-dir flag, SWFCALC_CACHE, platform default."""
    if flag:
        return Path(flag)
    env = os.environ.get("SWFCALC_CACHE")
    if env:
        return Path(env)
    return default_cache_dir()


def request_key(request: dict) -> str:
    return hashlib.sha256(canonical_json(request).encode("utf-8")).hexdigest()


class ResultCache:
    """Cache in one directory; ``warn`` receives human-readable problems."""

    def __init__(self, directory: Path | None, warn: Callable[[str], None]):
        self.directory = directory
        self.warn = warn
        self._disabled = directory is None

    def _path(self, key: str) -> Path:
        assert self.directory is not None
        return self.directory / f"{key}.json"

    def _load(self, key: str) -> Any | None:
        path = self._path(key)
        try:
            with open(path, "r", encoding="utf-8") as handle:
                entry = json.load(handle)
        except FileNotFoundError:
            return None
        except (OSError, ValueError, UnicodeDecodeError):
            self._evict(path)
            return None
        if (
            not isinstance(entry, dict)
            or entry.get("version") != __version__
            or "payload" not in entry
        ):
            self._evict(path)
            return None
        return entry["payload"]

    def _evict(self, path: Path) -> None:
        try:
            path.unlink()
        except OSError:
            pass

    def _store(self, key: str, payload: Any) -> None:
        assert self.directory is not None
        entry = {"version": __version__, "key": key, "payload": payload}
        text = json.dumps(entry, sort_keys=True)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp_name = tempfile.mkstemp(
                dir=self.directory, prefix=".swfcalc-", suffix=".tmp"
            )
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
            os.replace(tmp_name, self._path(key))
        except OSError as exc:
            self._disabled = True
            self.warn(
                f"cache directory {self.directory} is not writable "
                f"({exc}); continuing without cache"
            )

    def lookup_or_compute(self, request: dict, compute: Callable[[], Any]) -> Any:
        """Return the cached payload for the request, computing on a miss.

        The payload must round-trip through JSON unchanged; identical
        results are produced with a warm or cold cache.
        """
        if self._disabled:
            return compute()
        key = request_key(request)
        cached = self._load(key)
        if cached is not None:
            return cached
        payload = compute()
        self._store(key, payload)
        return payload

    def stats(self) -> tuple[int, int]:
        """(number of entries, total bytes); zeros when disabled."""
        if self.directory is None or not self.directory.is_dir():
            return (0, 0)
        entries = 0
        total = 0
        for path in sorted(self.directory.glob("*.json")):
            try:
                total += path.stat().st_size
                entries += 1
            except OSError:
                continue
        return (entries, total)

    def clear(self) -> int:
        if self.directory is None or not self.directory.is_dir():
            return 0
        removed = 0
        for path in sorted(self.directory.glob("*.json")):
            try:
                path.unlink()
                removed += 1
            except OSError:
                continue
        return removed
