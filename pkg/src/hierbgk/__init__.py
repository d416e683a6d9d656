"""Multiscale BGK solver on a 1D nodal DG grid.

Each mesh cell is advanced per time step by one of three solvers (Euler DG,
Navier-Stokes LDG, kinetic IMEX-DG) chosen by moment-realizability
indicators.  See the README for the CLI and the benchmark problems.
"""

__version__ = "0.1.0"

from hierbgk.basis import NodalBasis, gauss_legendre_rule, nodal_basis
from hierbgk.velocity import VelocityGrid, velocity_grid

__all__ = [
    "NodalBasis",
    "VelocityGrid",
    "gauss_legendre_rule",
    "nodal_basis",
    "velocity_grid",
    "__version__",
]
