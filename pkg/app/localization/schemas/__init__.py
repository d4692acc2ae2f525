from app.localization.schemas.locate import LocateResponse, LocateRow

__all__ = ["LocateResponse", "LocateRow"]
