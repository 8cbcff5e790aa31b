"""Append-only JSON-lines cache of character tables.

Line 1 is a header {"format": ..., "version": N}; every following line is
{"key": ..., "version": N, "table": {...}}. Entries with another version are
ignored. Appends go through a file lock so concurrent writers serialize.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from filelock import FileLock

from .reps.chartable import CharacterTable, character_table
from .reps.groups import PermGroup

CACHE_VERSION = 1
CACHE_FORMAT = "smalldisc-chartable-cache"
ENV_VAR = "SMALLDISC_CACHE"


def default_cache_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "smalldisc" / "chartables.jsonl"


def group_key(G: PermGroup) -> str:
    blob = json.dumps(G.canonical_key(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def table_bytes(table: CharacterTable) -> bytes:
    return json.dumps(table.to_record(), sort_keys=True, separators=(",", ":")).encode()


class TableCache:
    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path else default_cache_path()
        self._lock = FileLock(str(self.path) + ".lock")
        self._entries: dict[str, dict] | None = None

    def _load(self) -> dict[str, dict]:
        if self._entries is not None:
            return self._entries
        entries: dict[str, dict] = {}
        if self.path.exists():
            with self.path.open() as fh:
                header = fh.readline()
                try:
                    hdr = json.loads(header) if header.strip() else {}
                except json.JSONDecodeError:
                    hdr = {}
                if hdr.get("format") == CACHE_FORMAT:
                    for line in fh:
                        try:
                            rec = json.loads(line)
                        except json.JSONDecodeError:
                            continue
                        if rec.get("version") == CACHE_VERSION:
                            entries[rec["key"]] = rec["table"]
        self._entries = entries
        return entries

    def get(self, G: PermGroup) -> CharacterTable | None:
        rec = self._load().get(group_key(G))
        if rec is None:
            return None
        return CharacterTable.from_record(G, rec)

    def put(self, G: PermGroup, table: CharacterTable) -> None:
        key = group_key(G)
        rec = table.to_record()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self._lock:
            fresh = not self.path.exists() or self.path.stat().st_size == 0
            with self.path.open("a") as fh:
                if fresh:
                    fh.write(json.dumps({"format": CACHE_FORMAT, "version": CACHE_VERSION}) + "\n")
                fh.write(json.dumps({"key": key, "version": CACHE_VERSION, "table": rec}) + "\n")
        self._load()[key] = rec

    def table(self, G: PermGroup) -> CharacterTable:
        hit = self.get(G)
        if hit is not None:
            return hit
        table = character_table(G)
        self.put(G, table)
        return table

    def stats(self) -> dict:
        entries = self._load()
        size = self.path.stat().st_size if self.path.exists() else 0
        return {"path": str(self.path), "entries": len(entries), "bytes": size, "version": CACHE_VERSION}

    def clear(self) -> None:
        with self._lock:
            if self.path.exists():
                self.path.unlink()
        self._entries = {}
