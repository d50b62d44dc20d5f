import threading
from typing import Dict


class ExecutionCounter:
    """
    Tally of simulated circuit executions (one per drawn shot).

    Thread-safe using threading.Lock; per-thread counters can be merged.
    """

    def __init__(self):
        # Structure: {tag: executions}
        self._counts: Dict[str, int] = {}
        self._lock = threading.Lock()

    def record(self, executions: int, tag: str = "default") -> None:
        if executions < 0:
            raise ValueError(f"Cannot record a negative execution count ({executions})")
        with self._lock:
            self._counts[tag] = self._counts.get(tag, 0) + executions

    def merge(self, other: "ExecutionCounter") -> None:
        for tag, count in other.snapshot().items():
            self.record(count, tag)

    def snapshot(self) -> Dict[str, int]:
        with self._lock:
            return dict(self._counts)

    def count(self, tag: str = "default") -> int:
        with self._lock:
            return self._counts.get(tag, 0)

    @property
    def total(self) -> int:
        with self._lock:
            return sum(self._counts.values())
