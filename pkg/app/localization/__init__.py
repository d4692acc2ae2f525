"""Online SRP-PHAT and SMP-PHAT localization."""
