"""Operation count routes."""
