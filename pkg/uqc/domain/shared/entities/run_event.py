from dataclasses import dataclass
from datetime import datetime
from typing import Optional, Dict, Any
from enum import Enum


class EventType(Enum):
    """Types of run events"""
    INFO = "info"
    RESULT = "result"
    ERROR = "error"


class RunStep(Enum):
    """CLI commands, each one a step of a run"""
    PREP = "prep"
    TRAIN = "train"
    EVAL = "eval"
    THEORY = "theory"
    MC_CHECK = "mc-check"


@dataclass
class RunEvent:
    """
    Event that records a step or result while a command runs.

    Events are flushed into the run manifest when the command finishes.
    """
    id: int
    run_id: str
    timestamp: datetime
    type: EventType
    step: str
    message: str
    payload: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "timestamp": self.timestamp.isoformat(),
            "type": self.type.value,
            "step": self.step,
            "message": self.message,
            "payload": self.payload,
        }
