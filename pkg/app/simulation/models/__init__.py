from app.simulation.models.report import MethodOutcome, SimReport, TrialRecord
from app.simulation.models.room import RoomConfig, TrialSetup, TrialSignal

__all__ = [
    "MethodOutcome",
    "RoomConfig",
    "SimReport",
    "TrialRecord",
    "TrialSetup",
    "TrialSignal",
]
