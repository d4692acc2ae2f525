from app.gcc.services.correlation import (
    cross_spectrum,
    gcc,
    gcc_batch,
    iter_cross_spectra,
    phat,
)
from app.gcc.services.framing import frame_count, stft, validate_frame_size
from app.gcc.services.synthetic import plane_wave_spectra, random_phat_spectra
from app.gcc.services.wav_io import read_wav, write_wav

__all__ = [
    "cross_spectrum",
    "frame_count",
    "gcc",
    "gcc_batch",
    "iter_cross_spectra",
    "phat",
    "plane_wave_spectra",
    "random_phat_spectra",
    "read_wav",
    "stft",
    "validate_frame_size",
    "write_wav",
]
