"""Three equal-mass particles in a one-dimensional harmonic trap with
pairwise contact interactions, solved in a C6v symmetry-adapted truncated
oscillator basis."""

__version__ = "0.1.0"

from .hamiltonian import HamiltonianBlock, angular_A, build_block, total_energy, v_coefficient
from .solver import CouplingGrid, SpectrumTable, convergence_study, eigensolve_symmetric, spectrum, sweep
from .specfun import hermite, laguerre, log_gamma_half, radial_R
from .symmetry import SECTORS, RelState, Sector, Tag, classify, dimension_table, resolve_sector, sector_basis

__all__ = [
    "HamiltonianBlock",
    "angular_A",
    "build_block",
    "total_energy",
    "v_coefficient",
    "CouplingGrid",
    "SpectrumTable",
    "convergence_study",
    "eigensolve_symmetric",
    "spectrum",
    "sweep",
    "hermite",
    "laguerre",
    "log_gamma_half",
    "radial_R",
    "SECTORS",
    "RelState",
    "Sector",
    "Tag",
    "classify",
    "dimension_table",
    "resolve_sector",
    "sector_basis",
]
