"""Microphone array geometry, DoA grids and TDoA lookup tables."""
