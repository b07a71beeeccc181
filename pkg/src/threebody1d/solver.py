"""Dense eigensolution of sector blocks, coupling sweeps and truncation studies."""

from __future__ import annotations

import datetime
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import __version__
from .hamiltonian import HamiltonianBlock, build_block
from .symmetry import Sector, resolve_sector

__all__ = [
    "SYMMETRY_TOL",
    "CouplingGrid",
    "SpectrumTable",
    "ConvergenceTable",
    "eigensolve_symmetric",
    "spectrum",
    "sweep",
    "convergence_study",
    "default_workers",
]

SYMMETRY_TOL = 1e-12
VARIATIONAL_SLACK = 1e-10
THREADS_ENV = "THREEBODY1D_THREADS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def eigensolve_symmetric(matrix, *, tol: float = SYMMETRY_TOL):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a real symmetric matrix."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.size and np.max(np.abs(a - a.T)) > tol:
        raise ValueError("matrix is not symmetric within tolerance")
    return np.linalg.eigh(a)


@dataclass(frozen=True)
class CouplingGrid:
    values: tuple[float, ...]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.size == 0:
            raise ValueError("coupling grid is empty")
        if not np.all(np.isfinite(v)):
            raise ValueError("coupling grid has non-finite values")
        if np.any(np.diff(v) <= 0):
            raise ValueError("coupling grid must be strictly increasing")

    @classmethod
    def parse(cls, spec: str) -> CouplingGrid:
        """Parse ``"c"``, ``"c1,c2,..."`` or ``"start:stop:step"`` (stop inclusive)."""
        spec = spec.strip()
        if ":" in spec:
            parts = spec.split(":")
            if len(parts) != 3:
                raise ValueError(f"bad coupling range {spec!r}; expected start:stop:step")
            start, stop, step = (float(p) for p in parts)
            if step <= 0 or stop < start:
                raise ValueError(f"bad coupling range {spec!r}")
            n = int(round((stop - start) / step)) + 1
            # rounding keeps e.g. -10 + 3*0.1 from printing as -9.700000000000001
            return cls(tuple(round(start + i * step, 12) for i in range(n)))
        return cls(tuple(float(p) for p in spec.split(",")))

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True, eq=False)
class SpectrumTable:
    """Sorted eigenvalues for one sector/truncation over a coupling grid.

    ``energies[i, k]`` is the k-th lowest relative energy at ``couplings[i]``.
    """

    sector: Sector
    n_tilde: int
    couplings: np.ndarray
    energies: np.ndarray
    metadata: dict = field(default_factory=dict)

    def rows(self):
        for c, levels in zip(self.couplings, self.energies):
            for k, e in enumerate(levels):
                yield float(c), k, float(e)

    def __len__(self):
        return self.energies.size


def _as_block(sector, n_tilde) -> HamiltonianBlock:
    if isinstance(sector, HamiltonianBlock):
        return sector
    return build_block(sector, n_tilde)


def spectrum(sector: Sector | str | HamiltonianBlock, n_tilde: int | None, c: float) -> np.ndarray:
    block = _as_block(sector, n_tilde)
    if block.dim == 0:
        return np.empty(0)
    return eigensolve_symmetric(block.matrix(c))[0]


def sweep(sector, n_tilde: int, grid: CouplingGrid | Sequence[float], *, workers: int | None = None) -> SpectrumTable:
    """Spectra over a coupling grid; W is built once.

    Each grid point is solved independently. With ``workers > 1`` points are
    solved on a thread pool and reassembled in grid order.
    """
    if not isinstance(grid, CouplingGrid):
        grid = CouplingGrid(tuple(grid))
    block = _as_block(sector, n_tilde)
    workers = default_workers() if workers is None else workers
    cs = np.asarray(grid.values, dtype=float)

    def solve(c):
        if block.dim == 0:
            return np.empty(0)
        return np.linalg.eigvalsh(block.matrix(c))

    if workers > 1 and len(cs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            levels = list(pool.map(solve, cs))
    else:
        levels = [solve(c) for c in cs]
    energies = np.array(levels).reshape(len(cs), block.dim)
    metadata = {
        "sector": block.sector.name,
        "n_tilde": block.n_tilde,
        "dimension": block.dim,
        "solver": "numpy.linalg.eigh (LAPACK syevd)",
        "symmetry_tolerance": SYMMETRY_TOL,
        "radial_precision": block.metadata["radial_precision"],
        "library_version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
    }
    return SpectrumTable(block.sector, block.n_tilde, cs, energies, metadata)


@dataclass(frozen=True)
class ConvergenceTable:
    sector: Sector
    c: float
    n_tildes: tuple[int, ...]
    levels: np.ndarray  # shape (len(n_tildes), k)


def convergence_study(sector, c: float, n_tilde_list: Sequence[int], k_levels: int) -> ConvergenceTable:
    """Lowest ``k_levels`` eigenvalues for growing truncations.

    The bases are nested, so each tracked eigenvalue can only decrease;
    a violation beyond round-off raises ArithmeticError.
    """
    sector = resolve_sector(sector)
    n_list = list(n_tilde_list)
    if not n_list or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_tilde_list must be nonempty and strictly ascending")
    blocks = [build_block(sector, n) for n in n_list]
    smallest = min(b.dim for b in blocks)
    if k_levels < 1 or k_levels > smallest:
        raise ValueError(f"k_levels={k_levels} exceeds the smallest block dimension {smallest}")
    levels = np.array([spectrum(b, None, c)[:k_levels] for b in blocks])
    if np.any(np.diff(levels, axis=0) > VARIATIONAL_SLACK):
        raise ArithmeticError("eigenvalue increased with the truncation; nested-basis bound violated")
    return ConvergenceTable(sector, c, tuple(n_list), levels)
