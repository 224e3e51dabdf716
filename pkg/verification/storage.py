"""Line-delimited JSON report writer."""

from __future__ import annotations

import json
from pathlib import Path
from threading import RLock
from typing import Any, Dict, List


class JSONLinesReport:
    """Thread-safe append-only writer: one JSON object per line."""

    def __init__(self, path: Path):
        self.path = Path(path)
        if self.path.parent and not self.path.parent.exists():
            self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = RLock()

    def append(self, record: Dict[str, Any]) -> None:
        line = json.dumps(record, ensure_ascii=False, sort_keys=True)
        with self._lock:
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(line + "\n")

    def load(self) -> List[Dict[str, Any]]:
        with self._lock:
            if not self.path.exists():
                return []
            lines = self.path.read_text(encoding="utf-8").splitlines()
            return [json.loads(line) for line in lines if line.strip()]
