"""Discrete circular and spherical means of directional derivatives.

Library + CLI for mean-value weight constructions on direction sets,
rotation-optimized 3x3 finite-difference stencils, Perona-Malik
diffusion, mesh curvature from 1-ring circular means, and frequency
response analysis of derivative schemes.
"""

__version__ = "0.1.0"
