"""Workspace cache for computed bases and reports.

Entries are keyed by (kind, n, flavor, cap, code version), stored as JSON with
a sha256 checksum of the canonical payload, and written by create-then-rename.
A corrupt or stale entry is removed and reported as a miss.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from functools import lru_cache
from pathlib import Path


@lru_cache(maxsize=None)
def code_version() -> str:
    """Hash of the package sources, so any code change invalidates old entries."""
    h = hashlib.sha256()
    root = Path(__file__).resolve().parent
    for path in sorted(root.glob("*.py")):
        h.update(path.name.encode())
        h.update(path.read_bytes())
    return h.hexdigest()[:16]


def canonical(payload) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode()


def as_json(payload):
    """The payload as it reads back from disk (tuples become lists)."""
    return json.loads(json.dumps(payload, ensure_ascii=False))


def checksum(payload) -> str:
    return hashlib.sha256(canonical(payload)).hexdigest()


def entry_key(kind: str, n: int, flavor: str | None, cap: int, version: str | None = None) -> dict:
    return {"kind": kind, "n": n, "flavor": flavor, "cap": cap,
            "version": code_version() if version is None else version}


class Workspace:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def path_for(self, key: dict) -> Path:
        name = hashlib.sha256(canonical(key)).hexdigest()[:32]
        return self.root / f"{key['kind']}-{name}.json"

    def load(self, key: dict):
        """Payload for ``key``, or None on a miss (absent, stale, or corrupt)."""
        path = self.path_for(key)
        try:
            raw = path.read_bytes()
        except FileNotFoundError:
            return None
        try:
            entry = json.loads(raw)
            ok = entry["key"] == key and entry["checksum"] == checksum(entry["payload"])
        except (ValueError, KeyError, TypeError):
            ok = False
        if not ok:
            path.unlink(missing_ok=True)
            return None
        return entry["payload"]

    def store(self, key: dict, payload) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.path_for(key)
        # insertion order is kept on disk; the checksum uses the sorted form
        data = json.dumps({"key": key, "checksum": checksum(payload), "payload": payload},
                          separators=(",", ":"), ensure_ascii=False).encode()
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return path

    def get_or_compute(self, key: dict, compute):
        """(payload, hit) with the payload recomputed and stored on a miss."""
        payload = self.load(key)
        if payload is not None:
            return payload, True
        payload = as_json(compute())
        self.store(key, payload)
        return payload, False
