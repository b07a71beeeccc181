"""Basis wavefunctions, coordinate maps, and eigenstate densities on the relative plane."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .hamiltonian import HamiltonianBlock
from .specfun import hermite, laguerre
from .symmetry import JACOBI, RelState, Tag

__all__ = [
    "RelPoint",
    "DensityGrid",
    "psi_rel",
    "psi_cm",
    "particle_to_jacobi",
    "jacobi_to_polar",
    "eigen_density",
    "normalization_residual",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RelPoint:
    rho: float
    phi: float
    degenerate: bool = False  # rho == 0, where phi carries no information

    def __post_init__(self):
        if self.rho < 0:
            raise ValueError("rho must be nonnegative")


def _radial_part(nu: int, mu: int, rho):
    rho = np.asarray(rho, dtype=float)
    log_norm = 0.5 * (math.lgamma(nu + 1) - math.lgamma(nu + mu + 1) - math.log(math.pi))
    return math.exp(log_norm) * rho**mu * laguerre(nu, mu, rho * rho) * np.exp(-0.5 * rho * rho)


def psi_rel(state: RelState, rho, phi=None):
    """Real basis wavefunction of ``state`` at (rho, phi); broadcasts over arrays.

    ``rho`` may also be a RelPoint. Normalized so the integral of
    psi^2 rho drho dphi is 1.
    """
    if isinstance(rho, RelPoint):
        rho, phi = rho.rho, rho.phi
    return _radial_part(state.nu, state.mu, rho) * _angular_part(state, phi)


def _angular_part(state: RelState, phi):
    if state.tag is Tag.ZERO:
        return 1.0 if phi is None else np.ones_like(np.asarray(phi, dtype=float))
    trig = np.cos if state.tag is Tag.PLUS else np.sin
    return math.sqrt(2.0) * trig(state.mu * np.asarray(phi, dtype=float))


def psi_cm(eta: int, z):
    """Center-of-mass oscillator eigenfunction."""
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    z = np.asarray(z, dtype=float)
    log_norm = -0.25 * math.log(math.pi) - 0.5 * (eta * math.log(2.0) + math.lgamma(eta + 1))
    out = math.exp(log_norm) * hermite(eta, z) * np.exp(-0.5 * z * z)
    return out if np.ndim(out) else float(out)


def particle_to_jacobi(q) -> np.ndarray:
    """(q1, q2, q3) -> (x, y, z) with z the normalized center of mass."""
    q = np.asarray(q, dtype=float)
    if q.shape[-1] != 3:
        raise ValueError("expected three particle coordinates")
    return q @ JACOBI.T


def jacobi_to_polar(x: float, y: float) -> RelPoint:
    rho = math.hypot(x, y)
    if rho == 0.0:
        return RelPoint(0.0, 0.0, degenerate=True)
    return RelPoint(rho, math.atan2(y, x) % TWO_PI)


@dataclass(frozen=True)
class DensityGrid:
    """Uniform grid: rho in [0, rho_max] inclusive, phi in [0, 2 pi) exclusive."""

    rho_max: float = 6.0
    n_rho: int = 400
    n_phi: int = 720

    @property
    def rho(self) -> np.ndarray:
        return np.linspace(0.0, self.rho_max, self.n_rho)

    @property
    def phi(self) -> np.ndarray:
        return np.arange(self.n_phi) * (TWO_PI / self.n_phi)

    def integrate(self, values: np.ndarray) -> float:
        """Integral over the plane of an (n_rho, n_phi) array of rho-weighted values."""
        angular = values.sum(axis=1) * (TWO_PI / self.n_phi)
        return float(simpson(angular, x=self.rho))


def eigen_density(block: HamiltonianBlock, eigenvector, grid: DensityGrid = DensityGrid(), *, weighted: bool = False):
    """|Psi|^2 of a block eigenvector sampled on ``grid``, shape (n_rho, n_phi).

    The vector is first normalized to unit Euclidean norm. With
    ``weighted=True`` the density is multiplied by rho (the area measure).
    """
    v = np.asarray(eigenvector, dtype=float)
    if v.shape != (block.dim,):
        raise ValueError(f"eigenvector has shape {v.shape}, block dimension is {block.dim}")
    v = v / np.linalg.norm(v)
    rho, phi = grid.rho, grid.phi
    psi = np.zeros((rho.size, phi.size))
    for coeff, state in zip(v, block.basis):
        if coeff != 0.0:
            psi += coeff * np.outer(_radial_part(state.nu, state.mu, rho), _angular_part(state, phi))
    dens = psi * psi
    return dens * rho[:, None] if weighted else dens


def normalization_residual(density: np.ndarray, grid: DensityGrid, *, weighted: bool = False) -> float:
    """|1 - integral of the density| under the area measure."""
    values = density if weighted else density * grid.rho[:, None]
    return abs(1.0 - grid.integrate(values))
