"""Matrix elements of the pairwise contact interaction in a sector basis.

With energies in hbar*omega and lengths in sigma = sqrt(hbar/(m*omega)),
the relative Hamiltonian of a sector is ``H(c) = diag(h0) + c * W`` with
dimensionless coupling c = g / (hbar*omega*sigma). W depends only on the
sector and the truncation, so it is built once and reused across a sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .specfun import radial_R, radial_certified
from .symmetry import RelState, Sector, Tag, classify, resolve_sector, sector_basis

__all__ = [
    "UnitsConvention",
    "HamiltonianBlock",
    "ANGULAR_CLOSED_FORM",
    "angular_A",
    "angular_closed_form",
    "v_coefficient",
    "build_block",
    "total_energy",
]


@dataclass(frozen=True)
class UnitsConvention:
    energy_unit: str = "hbar*omega"
    length_unit: str = "sigma = sqrt(hbar/(m*omega))"
    coupling: str = "c = g/(hbar*omega*sigma)"

    @staticmethod
    def coupling_from_physical(g: float, hbar: float, m: float, omega: float) -> float:
        sigma = math.sqrt(hbar / (m * omega))
        return g / (hbar * omega * sigma)


UNITS = UnitsConvention()

# cos and sin of k*pi/6 for k = 0..11. Zeros and +/-1, +/-1/2 are exact, so
# angular sums over the interaction rays vanish exactly where they should.
_R3 = math.sqrt(3.0) / 2.0
_COS = (1.0, _R3, 0.5, 0.0, -0.5, -_R3, -1.0, -_R3, -0.5, 0.0, 0.5, _R3)
_SIN = (0.0, 0.5, _R3, 1.0, _R3, 0.5, 0.0, -0.5, -_R3, -1.0, -_R3, -0.5)


def _trig(tag: Tag, k: int) -> float:
    k %= 12
    return _SIN[k] if tag is Tag.MINUS else _COS[k]


def angular_A(tag_p: Tag, mu_p: int, tag: Tag, mu: int) -> float:
    """Sum over the six coincidence rays phi_i = (2i-1)pi/6 of trig(mu' phi_i) trig(mu phi_i).

    cos for PLUS and ZERO, sin for MINUS. Mixed cos/sin pairs are summed,
    not assumed zero.
    """
    # mu*phi_i = mu*(2i-1) * pi/6, so the angle index is an integer mod 12
    return math.fsum(
        _trig(tag_p, mu_p * (2 * i - 1)) * _trig(tag, mu * (2 * i - 1)) for i in range(1, 7)
    )


# Closed forms per sector: A(mu', mu) = amplitude * (-1)^(j + k), with j, k
# the family index of each mu (e.g. mu = 6j for A1, mu = 6j +/- 1 for E1+).
ANGULAR_CLOSED_FORM = {
    "A1": 6,
    "A2": 0,
    "B1": 0,
    "B2": 6,
    "E1+": 3,
    "E1-": 3,
    "E2+": 3,
    "E2-": 3,
}


def _family_index(sector_name: str, mu: int) -> int:
    if sector_name in ("A1", "A2", "E1+", "E2+"):
        # mu = 6j, 6j +/- 1, 6j +/- 2
        return (mu + 2) // 6
    if sector_name == "E2-":
        # mu = 6j + 3 +/- 1
        return (mu - 2) // 6
    # B1, B2: mu = 6j + 3; E1-: mu = 6j + 3 +/- 2
    return (mu - 1) // 6


def angular_closed_form(tag_p: Tag, mu_p: int, tag: Tag, mu: int) -> float:
    """Tabulated value of :func:`angular_A`; zero across different sectors."""
    s_p, s = classify(mu_p, tag_p), classify(mu, tag)
    if s_p is not s:
        return 0.0
    amp = ANGULAR_CLOSED_FORM[s.name]
    sign = (-1) ** (_family_index(s.name, mu_p) + _family_index(s.name, mu))
    return float(amp * sign)


def _prefactor(s_p: RelState, s: RelState) -> float:
    zeros = (s_p.tag is Tag.ZERO) + (s.tag is Tag.ZERO)
    return (1 / math.sqrt(2), 1.0, math.sqrt(2))[2 - zeros]


def v_coefficient(s_p: RelState, s: RelState) -> float:
    """Coefficient w with <s'|V|s> = w * c in units of hbar*omega."""
    if classify(s_p.mu, s_p.tag) is not classify(s.mu, s.tag):
        raise ValueError(f"{s_p} and {s} lie in different sectors")
    ang = angular_A(s_p.tag, s_p.mu, s.tag, s.mu)
    if ang == 0.0:
        return 0.0
    return _prefactor(s_p, s) * radial_R(s_p.nu, s_p.mu, s.nu, s.mu) * ang


def total_energy(rel_energy, eta: int = 0):
    """Add the center-of-mass energy (eta + 1/2) to a relative energy."""
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    return rel_energy + eta + 0.5


@dataclass(frozen=True, eq=False)
class HamiltonianBlock:
    sector: Sector
    n_tilde: int
    basis: tuple[RelState, ...]
    h0_diag: np.ndarray
    w: np.ndarray
    metadata: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self, c: float) -> np.ndarray:
        h = c * self.w
        h[np.diag_indices_from(h)] += self.h0_diag
        return h


def build_block(sector: Sector | str, n_tilde: int) -> HamiltonianBlock:
    sector = resolve_sector(sector)
    basis = tuple(sector_basis(sector, n_tilde))
    n = len(basis)
    h0 = np.array([s.energy for s in basis], dtype=float)
    w = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            w[i, j] = w[j, i] = v_coefficient(basis[i], basis[j])
    h0.setflags(write=False)
    w.setflags(write=False)
    certified = all(radial_certified(s.nu, s.mu, 0, 0) for s in basis)
    metadata = {
        "sector": sector.name,
        "n_tilde": n_tilde,
        "ordering": "(energy, mu, nu) ascending",
        "radial_precision": "certified" if certified else "uncertified",
    }
    return HamiltonianBlock(sector, n_tilde, basis, h0, w, metadata)
