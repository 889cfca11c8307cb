"""Content-addressed on-disk cache for resolutions.

Entries are JSON files named by the sha256 of the canonical request; writes go
through a temporary file and ``os.replace`` so concurrent writers never expose a
partial entry. A ``manifest.json`` records the keys written by this process.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .serialize import canonical_dumps

_active: "ResolutionCache | None" = None


class ResolutionCache:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key(request: dict) -> str:
        return hashlib.sha256(canonical_dumps(request).encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str):
        p = self._path(key)
        try:
            with open(p) as fh:
                payload = json.load(fh)
        except (FileNotFoundError, json.JSONDecodeError):
            self.misses += 1
            return None
        self.hits += 1
        return payload

    def put(self, key: str, payload: dict) -> None:
        p = self._path(key)
        p.parent.mkdir(parents=True, exist_ok=True)
        self._atomic_write(p, canonical_dumps(payload))
        self._record(key)

    def _atomic_write(self, path: Path, text: str) -> None:
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _record(self, key: str) -> None:
        man = self.root / "manifest.json"
        try:
            with open(man) as fh:
                keys = set(json.load(fh).get("keys", []))
        except (FileNotFoundError, json.JSONDecodeError):
            keys = set()
        keys.add(key)
        self._atomic_write(man, canonical_dumps({"format": 1, "keys": sorted(keys)}))


def enable(root) -> ResolutionCache:
    global _active
    _active = ResolutionCache(root)
    return _active


def disable() -> None:
    global _active
    _active = None


def active() -> "ResolutionCache | None":
    return _active
