"""
qclab - A numerical laboratory for quasiconformal maps.

This package contains the complete application:
- core: Framework-agnostic mathematics (grids, Moebius maps, Beltrami solver,
  barycentric extension, Lieb coordinates, holomorphic motions, Jordan families)
- infrastructure: Artifact storage, CSV/JSON codecs, SVG rendering
- cli: Experiment runner and acceptance suites
- config: Application configuration
"""

__version__ = "0.1.0"
