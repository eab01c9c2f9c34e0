"""Matchings without short augmenting paths in 1-planar graphs, with audits."""

__version__ = "0.1.0"
