"""STFT, cross-spectra, PHAT weighting and interpolated GCC."""
