"""Exact tools for nodal hypersurfaces: singularity classification, Chern
class pushforwards, diagonal Hilbert-Mumford destabilizers and stabilizer
bounds."""

__version__ = "0.1.0"
