"""Offline pair-merging plans for SMP-PHAT."""
