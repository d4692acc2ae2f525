"""Merge plan routes."""
