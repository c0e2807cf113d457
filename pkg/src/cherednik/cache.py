"""Append-only JSON-lines result cache for kernel/series runs.

One RunRecord per line.  The key is (p, n, t, c_mode, format_version); a
format-version bump invalidates old lines (they are simply never matched).
Records are stored exactly as serialized, so a cache hit returns the
byte-identical series for an identical key.  Timestamps and wall times live
in a separate "timing" field that comparisons are expected to strip.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from . import FORMAT_VERSION, __version__

CACHE_ENV = "CHEREDNIK_CACHE_DIR"


def cache_dir(override: str | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "cherednik"


@dataclass
class RunRecord:
    key: dict
    status: str = "ok"
    series: dict | None = None
    dims: dict = field(default_factory=dict)
    conjecture: dict = field(default_factory=dict)
    shape_check: dict | None = None
    baby_verma_bound_ok: bool | None = None
    notes: list = field(default_factory=list)
    engine_version: str = __version__
    timing: dict = field(default_factory=dict)

    @staticmethod
    def make_key(p: int, n: int, t: int, c_mode: str) -> dict:
        return {
            "p": p,
            "n": n,
            "t": t,
            "c_mode": c_mode,
            "format_version": FORMAT_VERSION,
        }

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "status": self.status,
            "series": self.series,
            "dims": self.dims,
            "conjecture": self.conjecture,
            "shape_check": self.shape_check,
            "baby_verma_bound_ok": self.baby_verma_bound_ok,
            "notes": self.notes,
            "engine_version": self.engine_version,
            "timing": self.timing,
        }

    @staticmethod
    def from_json(d: dict) -> "RunRecord":
        return RunRecord(
            key=d["key"],
            status=d.get("status", "ok"),
            series=d.get("series"),
            dims=d.get("dims", {}),
            conjecture=d.get("conjecture", {}),
            shape_check=d.get("shape_check"),
            baby_verma_bound_ok=d.get("baby_verma_bound_ok"),
            notes=d.get("notes", []),
            engine_version=d.get("engine_version", "unknown"),
            timing=d.get("timing", {}),
        )


class RunCache:
    """JSON-lines store; writes are append-only through this single object."""

    def __init__(self, directory: Path | str | None = None):
        self.dir = cache_dir(None if directory is None else str(directory))
        self.path = self.dir / "runs.jsonl"

    def lookup(self, key: dict) -> RunRecord | None:
        if not self.path.exists():
            return None
        hit = None
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    d = json.loads(line)
                except json.JSONDecodeError:
                    continue  # tolerate a torn write; never trust it
                if d.get("key") == key:
                    hit = d
        return RunRecord.from_json(hit) if hit else None

    def store(self, record: RunRecord) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record.to_json(), sort_keys=True) + "\n")
