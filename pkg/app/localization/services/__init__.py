from app.localization.services.localizer import Localizer, merge_spectra, smp_phat, srp_phat
from app.localization.services.pipeline import (
    LocalizationSetup,
    PipelineConfig,
    locate_blocks,
    locate_wav,
)

__all__ = [
    "LocalizationSetup",
    "Localizer",
    "PipelineConfig",
    "locate_blocks",
    "locate_wav",
    "merge_spectra",
    "smp_phat",
    "srp_phat",
]
