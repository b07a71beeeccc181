"""Brute-force references that share no code path with the sector solver.

* radial integrals by generalized Gauss-Laguerre quadrature (scipy nodes
  and scipy polynomial evaluation);
* the interaction in the unsymmetrized basis |nu, m>, m in Z, whose
  spectrum must be the union of all sector spectra;
* analytic limits: the weak-coupling slope of the ground state and the
  hard-core (fermionized) spectrum at infinite repulsion.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import eval_genlaguerre, roots_genlaguerre

__all__ = [
    "ORACLE_MAX_N_TILDE",
    "ComplexRelState",
    "radial_quadrature",
    "angular_sum_complex",
    "complex_basis",
    "full_relative_spectrum",
    "perturbative_slope_A1",
    "tonks_reference",
]

ORACLE_MAX_N_TILDE = 14


@dataclass(frozen=True)
class ComplexRelState:
    nu: int
    m: int

    @property
    def energy(self) -> int:
        return 2 * self.nu + abs(self.m) + 1


def radial_quadrature(nu_p: int, mu_p: int, nu: int, mu: int, n_nodes: int | None = None) -> float:
    """R(nu', mu', nu, mu) by Gauss-Laguerre quadrature with weight t^alpha e^-t.

    With alpha = (mu + mu' - 1)/2 the remaining integrand is a polynomial of
    degree nu + nu', integrated exactly by the default node count.
    """
    min_nodes = 2 * (nu + nu_p) + mu + mu_p + 16
    n = max(min_nodes, n_nodes or 0)
    alpha = 0.5 * (mu + mu_p - 1)
    t, wts = roots_genlaguerre(n, alpha)
    integrand = eval_genlaguerre(nu, mu, t) * eval_genlaguerre(nu_p, mu_p, t)
    log_norm = 0.5 * (
        math.lgamma(nu + 1) + math.lgamma(nu_p + 1) - math.lgamma(nu + mu + 1) - math.lgamma(nu_p + mu_p + 1)
    )
    return float(np.dot(wts, integrand)) * math.exp(log_norm) / (2 * math.pi)


def angular_sum_complex(delta_mu: int) -> complex:
    return sum(cmath.exp(1j * delta_mu * (2 * i - 1) * math.pi / 6) for i in range(1, 7))


def complex_basis(n_tilde: int) -> list[ComplexRelState]:
    return [
        ComplexRelState(nu, m)
        for m in range(-n_tilde, n_tilde + 1)
        for nu in range((n_tilde - abs(m)) // 2 + 1)
    ]


@lru_cache(maxsize=None)
def _complex_blocks(n_tilde: int) -> tuple[np.ndarray, np.ndarray]:
    basis = complex_basis(n_tilde)
    n = len(basis)
    h0 = np.array([b.energy for b in basis], dtype=float)
    w = np.zeros((n, n), dtype=complex)
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            ang = angular_sum_complex(b.m - a.m)
            if abs(ang) < 1e-9:
                continue
            w[i, j] = radial_quadrature(a.nu, abs(a.m), b.nu, abs(b.m)) * ang / math.sqrt(2)
    # six-ray sums are real (6, -6 or 0), so W is real symmetric
    if np.max(np.abs(w.imag)) > 1e-9:
        raise ArithmeticError("complex-basis interaction is not real")
    w = w.real
    return h0, 0.5 * (w + w.T)


def full_relative_spectrum(n_tilde: int, c: float) -> np.ndarray:
    """All relative eigenvalues at truncation n_tilde, without symmetry adaptation."""
    if n_tilde > ORACLE_MAX_N_TILDE:
        raise ValueError(f"oracle is capped at n_tilde <= {ORACLE_MAX_N_TILDE}")
    if n_tilde < 0:
        raise ValueError("n_tilde must be nonnegative")
    h0, w = _complex_blocks(n_tilde)
    return np.linalg.eigvalsh(np.diag(h0) + c * w)


def perturbative_slope_A1() -> float:
    """First-order energy shift per unit coupling of the noninteracting ground state.

    Each of the three pairs contributes delta(q_i - q_j) = delta(sqrt(2) x)
    = delta(x)/sqrt(2) weighted by the oscillator ground density at x = 0,
    which is 1/sqrt(pi).
    """
    density_at_coincidence = 1.0 / math.sqrt(math.pi)
    return 3 * density_at_coincidence / math.sqrt(2)


def tonks_reference(sector: str, n_levels: int) -> list[int]:
    """Lowest relative energies of the bosonic sectors at infinite repulsion.

    The hard-core limit confines the motion to one of the six wedges between
    coincidence rays, with Dirichlet walls: angular functions sin(3k(phi - phi0)),
    k >= 1, and energies 2*nu + 3k + 1. Continuing symmetrically across the
    walls, odd k is even about the wedge bisector (A1) and even k is odd
    about it (B2).
    """
    if sector not in ("A1", "B2"):
        raise ValueError("Tonks reference is defined for the A1 and B2 sectors")
    if n_levels < 1:
        raise ValueError("n_levels must be >= 1")
    first = 1 if sector == "A1" else 2
    # enough (nu, k) pairs to be sure the lowest n_levels are present
    e_max = 3 * first + 1 + 2 * n_levels
    energies = [
        2 * nu + 3 * k + 1
        for k in range(first, e_max // 3 + 1, 2)
        for nu in range(n_levels + 1)
        if 2 * nu + 3 * k + 1 <= e_max
    ]
    return sorted(energies)[:n_levels]
