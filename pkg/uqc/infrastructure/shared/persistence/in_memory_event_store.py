import logging
import threading
from typing import Dict, List

from ....domain.shared.repositories.event_store import EventStore
from ....domain.shared.entities.run_event import RunEvent

logger = logging.getLogger(__name__)


class InMemoryEventStore(EventStore):
    """
    In-memory implementation of the EventStore with thread-safety.

    Thread-safe using threading.Lock; events live for the process and are
    persisted only through the run manifest.
    """

    def __init__(self):
        # Structure: {run_id: [RunEvent, ...]}
        self._events: Dict[str, List[RunEvent]] = {}
        self._lock = threading.Lock()
        logger.debug("InMemoryEventStore initialized")

    def append_event(self, run_id: str, event: RunEvent) -> int:
        with self._lock:
            events = self._events.setdefault(run_id, [])
            event.id = len(events) + 1
            events.append(event)
            logger.debug(f"Event appended for run {run_id}: {event.type.value} - {event.message}")
            return event.id

    def get_events(self, run_id: str, since_event_id: int = 0) -> List[RunEvent]:
        with self._lock:
            return [event for event in self._events.get(run_id, []) if event.id > since_event_id]
