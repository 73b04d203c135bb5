"""
Test suite for the spherical space toolkit.

Tests are organized by package: exact algebra, Lie algebra core, cones,
spherical structure, compression, Grassmannian limits, and the command line.
"""
