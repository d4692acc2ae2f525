from app.gcc.models.spectra import CorrelationVector, CrossSpectra, PhatSpectra, SpectralFrame

__all__ = ["CorrelationVector", "CrossSpectra", "PhatSpectra", "SpectralFrame"]
