"""Exact computation of cluster scattering diagrams."""

__version__ = "0.1.0"
