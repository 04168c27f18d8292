"""Append-only event persistence.

Events are JSON documents with a globally monotonic ``seq`` number, written
one per line into one file per entity family (``users.jsonl``,
``projects.jsonl``, ...). The shared counter gives a total order across
families, so replaying the merged streams reconstructs state exactly. A
pure in-memory backend with the same interface backs the tests.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from ..errors import CinnamonError

FAMILIES = ("users", "projects", "rules", "readings", "alerts")


class MemoryEventStore:
    def __init__(self) -> None:
        self._events: dict[str, list[dict]] = {family: [] for family in FAMILIES}
        self._seq = 0

    def append(self, family: str, event: dict) -> dict:
        if family not in self._events:
            raise CinnamonError(f"unknown event family {family!r}")
        self._seq += 1
        record = {"seq": self._seq, **event}
        self._events[family].append(record)
        return record

    def events(self, family: str) -> list[dict]:
        return list(self._events[family])

    def all_events_ordered(self) -> list[dict]:
        merged = [e for events in self._events.values() for e in events]
        merged.sort(key=lambda e: e["seq"])
        return merged

    def flush(self) -> None:
        pass

    def close(self) -> None:
        pass


class FileEventStore:
    """JSON-lines event log under a data directory, single-process locked."""

    def __init__(self, data_dir: str | Path) -> None:
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._lock_path = self.data_dir / ".lock"
        try:
            fd = os.open(self._lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise CinnamonError(
                f"data directory {self.data_dir} is locked by another process "
                f"(remove {self._lock_path} if that process is gone)"
            ) from None
        with os.fdopen(fd, "w") as fh:
            fh.write(str(os.getpid()))
        self._handles = {
            family: open(self.data_dir / f"{family}.jsonl", "a", encoding="utf-8")
            for family in FAMILIES
        }
        self._seq = max(
            (e["seq"] for family in FAMILIES for e in self.events(family)), default=0
        )

    def append(self, family: str, event: dict) -> dict:
        if family not in self._handles:
            raise CinnamonError(f"unknown event family {family!r}")
        self._seq += 1
        record = {"seq": self._seq, **event}
        handle = self._handles[family]
        handle.write(json.dumps(record, sort_keys=True) + "\n")
        handle.flush()
        return record

    def events(self, family: str) -> list[dict]:
        path = self.data_dir / f"{family}.jsonl"
        if not path.exists():
            return []
        out = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    out.append(json.loads(line))
        return out

    def all_events_ordered(self) -> list[dict]:
        merged = [e for family in FAMILIES for e in self.events(family)]
        merged.sort(key=lambda e: e["seq"])
        return merged

    def flush(self) -> None:
        for handle in self._handles.values():
            handle.flush()
            os.fsync(handle.fileno())

    def close(self) -> None:
        for handle in self._handles.values():
            handle.close()
        self._handles = {}
        if self._lock_path.exists():
            self._lock_path.unlink()
