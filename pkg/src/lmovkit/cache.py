"""Content-addressed on-disk cache for colored invariants."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import CONVENTION_VERSION
from .exactring import RationalQT
from .skein.braids import BraidWord

__all__ = ["CacheCorruption", "InvariantCache", "cache_key", "default_cache_dir"]

ENV_VAR = "LMOVKIT_CACHE_DIR"


class CacheCorruption(IOError):
    """A cache file failed its integrity check."""


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "lmovkit"


def cache_key(braid: BraidWord, colors: tuple, version: str = CONVENTION_VERSION) -> str:
    reduced = braid.free_reduce()
    payload = json.dumps(
        {"strands": reduced.strands, "word": list(reduced.letters), "colors": [list(c) for c in colors], "version": version},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


class InvariantCache:
    def __init__(self, root: str | Path | None = None, version: str = CONVENTION_VERSION):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.version = version

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, braid: BraidWord, colors: tuple) -> RationalQT | None:
        key = cache_key(braid, colors, self.version)
        path = self._path(key)
        try:
            text = path.read_text()
        except FileNotFoundError:
            return None
        try:
            entry = json.loads(text)
            ok = entry.get("key") == key and entry.get("sha256") == _digest(entry["value"])
        except (ValueError, KeyError, TypeError) as exc:
            raise CacheCorruption(f"unreadable cache entry {path}") from exc
        if not ok:
            raise CacheCorruption(f"hash mismatch in cache entry {path}")
        return RationalQT.from_json(entry["value"])

    def put(self, braid: BraidWord, colors: tuple, value: RationalQT) -> Path:
        key = cache_key(braid, colors, self.version)
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = value.to_json()
        entry = {"key": key, "version": self.version, "value": payload, "sha256": _digest(payload)}
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(entry, fh, sort_keys=True, separators=(",", ":"))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def get_or_compute(self, braid: BraidWord, colors: tuple, compute) -> RationalQT:
        try:
            hit = self.get(braid, colors)
        except CacheCorruption:
            hit = None
        if hit is not None:
            return hit
        value = compute(braid, colors)
        self.put(braid, colors, value)
        return value
