from app.simulation.schemas.report import OutcomeDocument, SimReportDocument, TrialDocument

__all__ = ["OutcomeDocument", "SimReportDocument", "TrialDocument"]
