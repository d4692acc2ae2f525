"""Localization routes."""
