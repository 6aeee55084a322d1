"""
Numerical core of the laboratory.

This package is framework-agnostic: it never reads settings, touches the
filesystem or configures logging. Callers pass grids, tolerances and
iteration limits explicitly, so every routine can be tested in isolation.
"""
