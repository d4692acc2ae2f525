from app.geometry.models.array import MicArray, PairSet
from app.geometry.models.grid import DoaGrid
from app.geometry.models.tdoa import TdoaTable

__all__ = ["DoaGrid", "MicArray", "PairSet", "TdoaTable"]
