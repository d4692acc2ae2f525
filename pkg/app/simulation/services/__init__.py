from app.simulation.services.campaign_service import (
    CampaignContext,
    CampaignService,
    mean_angular_error,
    strongest_block,
)
from app.simulation.services.image_source import (
    check_inside,
    compute_rir,
    energy_decay_curve,
    image_sources,
    reflection_coefficient,
    rir_length,
    sabine_absorption,
    schroeder_rt60,
)
from app.simulation.services.trials import (
    default_block_samples,
    sample_setup,
    simulate_trial,
    validate_setup,
)

__all__ = [
    "CampaignContext",
    "CampaignService",
    "check_inside",
    "compute_rir",
    "default_block_samples",
    "energy_decay_curve",
    "image_sources",
    "mean_angular_error",
    "reflection_coefficient",
    "rir_length",
    "sabine_absorption",
    "sample_setup",
    "schroeder_rt60",
    "simulate_trial",
    "strongest_block",
    "validate_setup",
]
