"""Geometry routes."""
