"""Analytic operation counts and wall-clock benchmarks of SRP and SMP scans."""
