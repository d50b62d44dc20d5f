from abc import ABC, abstractmethod
from typing import List
from ..entities.run_event import RunEvent


class EventStore(ABC):
    """
    Interface for the run event store.

    Allows adding and querying events generated while a command
    executes for a run directory.
    """

    @abstractmethod
    def append_event(self, run_id: str, event: RunEvent) -> int:
        """
        Adds an event to the store and returns the assigned event_id.

        Args:
            run_id: Run ID (config hash prefix)
            event: Event to add

        Returns:
            Event ID (incremental per run)
        """
        pass

    @abstractmethod
    def get_events(self, run_id: str, since_event_id: int = 0) -> List[RunEvent]:
        """
        Retrieves the events of a run, optionally since a specific event_id.

        Returns:
            List of events ordered by ID
        """
        pass
