"""JSON documents of campaign reports."""

from typing import Any

from pydantic import BaseModel, Field

from app.simulation.models import SimReport


class OutcomeDocument(BaseModel):
    direction: list[float]
    index: int
    energy: float
    error_deg: float = Field(..., ge=0.0, le=180.0)
    block: int


class TrialDocument(BaseModel):
    trial: int
    rt60: float
    array_center: list[float]
    source_pos: list[float]
    truth: list[float]
    outcomes: dict[str, OutcomeDocument]


class SimReportDocument(BaseModel):
    array: str
    method: str
    seed: int
    trials: int
    mae_deg: dict[str, float]
    agreement: float
    config: dict[str, Any]
    records: list[TrialDocument]

    @classmethod
    def from_report(cls, report: SimReport) -> "SimReportDocument":
        return cls(
            array=report.array,
            method=report.method,
            seed=report.seed,
            trials=len(report.trials),
            mae_deg={str(method): value for method, value in report.mae_deg.items()},
            agreement=report.agreement,
            config=report.config,
            records=[
                TrialDocument(
                    trial=record.trial,
                    rt60=record.rt60,
                    array_center=record.array_center.tolist(),
                    source_pos=record.source_pos.tolist(),
                    truth=record.truth.tolist(),
                    outcomes={
                        str(method): OutcomeDocument(
                            direction=outcome.direction.tolist(),
                            index=outcome.index,
                            energy=outcome.energy,
                            error_deg=outcome.error_deg,
                            block=outcome.block,
                        )
                        for method, outcome in record.outcomes.items()
                    },
                )
                for record in report.trials
            ],
        )
