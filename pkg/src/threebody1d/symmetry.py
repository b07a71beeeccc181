"""Point-group data for the relative plane of three trapped particles.

The relative plane carries the C6v symmetry of a regular hexagon: S3
particle permutations realized as rotations/reflections, times the Z2 of
parity. Basis vectors |nu, mu, +/-> are cos/sin combinations of angular
momentum mu and fall into one irrep each, with a pattern of period 6 in mu.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "Tag",
    "RelState",
    "CmState",
    "GroupElement",
    "GROUP_ELEMENTS",
    "Sector",
    "SECTORS",
    "JACOBI",
    "classify",
    "sector_basis",
    "dimension_table",
    "group_action",
    "compose",
    "permutation_matrix_check",
    "character",
    "resolve_sector",
    "get_element",
]

TWO_PI = 2.0 * math.pi


class Tag(enum.Enum):
    ZERO = "0"
    PLUS = "+"
    MINUS = "-"

    def __str__(self):
        return self.value


@dataclass(frozen=True, order=True)
class RelState:
    """Relative-motion basis vector |nu, 0> or |nu, mu, +/->."""

    nu: int
    mu: int
    tag: Tag

    def __post_init__(self):
        if self.nu < 0 or self.mu < 0:
            raise ValueError(f"nu and mu must be nonnegative: {self!r}")
        if (self.tag is Tag.ZERO) != (self.mu == 0):
            raise ValueError(f"tag ZERO is required exactly when mu == 0: {self!r}")

    @property
    def excitation(self) -> int:
        return 2 * self.nu + self.mu

    @property
    def energy(self) -> int:
        """Trap energy of the relative motion in units of hbar*omega."""
        return 2 * self.nu + self.mu + 1

    def __str__(self):
        if self.tag is Tag.ZERO:
            return f"|{self.nu},0>"
        return f"|{self.nu},{self.mu},{self.tag}>"


@dataclass(frozen=True)
class CmState:
    eta: int

    def __post_init__(self):
        if self.eta < 0:
            raise ValueError("eta must be nonnegative")

    @property
    def energy(self) -> float:
        return self.eta + 0.5


# Jacobi rotation q -> (x, y, z). The y row is (1, 1, -2)/sqrt(6); z is the
# normalized center of mass.
JACOBI = np.array(
    [
        [1 / math.sqrt(2), -1 / math.sqrt(2), 0.0],
        [1 / math.sqrt(6), 1 / math.sqrt(6), -2 / math.sqrt(6)],
        [1 / math.sqrt(3), 1 / math.sqrt(3), 1 / math.sqrt(3)],
    ]
)


@dataclass(frozen=True)
class GroupElement:
    """One C6v element acting on the hyperangle as phi -> reflect*phi + offset."""

    name: str
    perm_label: str
    reflect: int
    offset: float
    cls: str
    # particle image of 1, 2, 3 and whether parity is applied
    perm: tuple[int, int, int]
    parity: bool

    def __call__(self, phi):
        return group_action(self, phi)

    def particle_matrix(self) -> np.ndarray:
        s = np.zeros((3, 3))
        for row, target in enumerate(self.perm):
            s[row, target - 1] = 1.0
        return -s if self.parity else s


_P3 = math.pi / 3
GROUP_ELEMENTS: tuple[GroupElement, ...] = (
    GroupElement("E", "e", 1, 0.0, "E", (1, 2, 3), False),
    GroupElement("sv", "s12", -1, math.pi, "sv", (2, 1, 3), False),
    GroupElement("sv'", "s23", -1, _P3, "sv", (1, 3, 2), False),
    GroupElement("sv''", "s31", -1, -_P3, "sv", (3, 2, 1), False),
    GroupElement("C3^-1", "s231", 1, -2 * _P3, "C3", (2, 3, 1), False),
    GroupElement("C3", "s312", 1, 2 * _P3, "C3", (3, 1, 2), False),
    GroupElement("C2", "pi", 1, math.pi, "C2", (1, 2, 3), True),
    GroupElement("sd", "pi*s12", -1, 0.0, "sd", (2, 1, 3), True),
    GroupElement("sd'", "pi*s23", -1, -2 * _P3, "sd", (1, 3, 2), True),
    GroupElement("sd''", "pi*s31", -1, 2 * _P3, "sd", (3, 2, 1), True),
    GroupElement("C6", "pi*s231", 1, _P3, "C6", (2, 3, 1), True),
    GroupElement("C6^-1", "pi*s312", 1, -_P3, "C6", (3, 1, 2), True),
)
_ELEMENT_INDEX = {g.name: g for g in GROUP_ELEMENTS} | {g.perm_label: g for g in GROUP_ELEMENTS}


def get_element(label: str) -> GroupElement:
    try:
        return _ELEMENT_INDEX[label]
    except KeyError:
        raise ValueError(f"unknown group element {label!r}") from None


def group_action(g: GroupElement, phi):
    """Image of the hyperangle ``phi`` under ``g``, reduced to [0, 2*pi)."""
    return np.mod(g.reflect * np.asarray(phi, dtype=float) + g.offset, TWO_PI)


def _same_angle(a: float, b: float, tol: float = 1e-12) -> bool:
    d = math.remainder(a - b, TWO_PI)
    return abs(d) < tol


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """The element acting as ``g(h(phi))``."""
    reflect = g.reflect * h.reflect
    offset = g.reflect * h.offset + g.offset
    for k in GROUP_ELEMENTS:
        if k.reflect == reflect and _same_angle(k.offset, offset):
            return k
    raise ArithmeticError(f"composition of {g.name} and {h.name} left the group")


def permutation_matrix_check(label: str) -> tuple[np.ndarray, np.ndarray]:
    """Particle-space matrix of a permutation/parity and its Jacobi-space form.

    The Jacobi form ``J S J^T`` is block diagonal: a 2x2 rotation or
    reflection of the relative plane that sends a point at hyperangle phi to
    ``group_action(g, phi)``, and +1 or -1 on the center of mass.
    """
    g = get_element(label)
    s = g.particle_matrix()
    return s, JACOBI @ s @ JACOBI.T


# -- character tables -------------------------------------------------------

C6V_CLASSES = ("E", "C2", "C3", "C6", "sv", "sd")
C6V_CLASS_SIZES = {"E": 1, "C2": 1, "C3": 2, "C6": 2, "sv": 3, "sd": 3}
C6V_CHARACTERS = {
    "A1": {"E": 1, "C2": 1, "C3": 1, "C6": 1, "sv": 1, "sd": 1},
    "A2": {"E": 1, "C2": 1, "C3": 1, "C6": 1, "sv": -1, "sd": -1},
    "B1": {"E": 1, "C2": -1, "C3": 1, "C6": -1, "sv": -1, "sd": 1},
    "B2": {"E": 1, "C2": -1, "C3": 1, "C6": -1, "sv": 1, "sd": -1},
    "E1": {"E": 2, "C2": -2, "C3": -1, "C6": 1, "sv": 0, "sd": 0},
    "E2": {"E": 2, "C2": 2, "C3": -1, "C6": -1, "sv": 0, "sd": 0},
}

C2V_CLASSES = ("E", "C2", "sv", "sd")
C2V_CLASS_SIZES = {"E": 1, "C2": 1, "sv": 1, "sd": 1}
C2V_CHARACTERS = {
    "A1": {"E": 1, "C2": 1, "sv": 1, "sd": 1},
    "A2": {"E": 1, "C2": 1, "sv": -1, "sd": -1},
    "B1": {"E": 1, "C2": -1, "sv": -1, "sd": 1},
    "B2": {"E": 1, "C2": -1, "sv": 1, "sd": -1},
}

_TABLES = {"C6v": C6V_CHARACTERS, "C2v": C2V_CHARACTERS}


def character(irrep: str, cls: str, group: str = "C6v") -> int:
    try:
        return _TABLES[group][irrep][cls]
    except KeyError:
        raise ValueError(f"no character for irrep={irrep!r}, class={cls!r}, group={group!r}") from None


# -- sectors ----------------------------------------------------------------


@dataclass(frozen=True)
class Sector:
    """One diagonalizable block: a C6v irrep, or one tag-half of an E irrep."""

    name: str
    c6v_irrep: str
    block_tag: Tag
    c2v_irrep: str
    content: frozenset
    residues: tuple[int, ...]

    @property
    def parity(self) -> int:
        # character of C2 (parity inversion), divided by the irrep dimension
        chi = C6V_CHARACTERS[self.c6v_irrep]
        return chi["C2"] // chi["E"]

    @property
    def interacting(self) -> bool:
        """False for the fully antisymmetric sectors, which never feel V."""
        return self.c6v_irrep not in ("A2", "B1")

    def contains(self, state: RelState) -> bool:
        if state.tag is Tag.ZERO:
            return self.name == "A1"
        return state.tag is self.block_tag and state.mu % 6 in self.residues

    def __str__(self):
        return self.name


_BOSE3 = frozenset({"BBB", "BBX", "XYZ"})
_FERMI3 = frozenset({"FFF", "FFX", "XYZ"})
SECTORS: dict[str, Sector] = {
    s.name: s
    for s in (
        Sector("A1", "A1", Tag.PLUS, "A1", _BOSE3, (0,)),
        Sector("A2", "A2", Tag.MINUS, "A2", _FERMI3, (0,)),
        Sector("B1", "B1", Tag.PLUS, "B1", _FERMI3, (3,)),
        Sector("B2", "B2", Tag.MINUS, "B2", _BOSE3, (3,)),
        Sector("E1+", "E1", Tag.PLUS, "B1", frozenset({"FFX", "XYZ"}), (1, 5)),
        Sector("E1-", "E1", Tag.MINUS, "B2", frozenset({"BBX", "XYZ"}), (1, 5)),
        Sector("E2+", "E2", Tag.PLUS, "A1", frozenset({"BBX", "XYZ"}), (2, 4)),
        Sector("E2-", "E2", Tag.MINUS, "A2", frozenset({"FFX", "XYZ"}), (2, 4)),
    )
}

# Most-indistinguishable content label with parity sign -> sector.
CONTENT_ALIASES = {
    "BBB+": "A1",
    "BBB-": "B2",
    "FFF+": "A2",
    "FFF-": "B1",
    "BBX+": "E2+",
    "BBX-": "E1-",
    "FFX+": "E2-",
    "FFX-": "E1+",
}


def resolve_sector(label: str | Sector) -> Sector:
    """Look up a sector by name (A1, E1+, ...) or content alias (BBB+, FFX-, ...)."""
    if isinstance(label, Sector):
        return label
    key = label.strip().replace("−", "-")
    if key in SECTORS:
        return SECTORS[key]
    if key in CONTENT_ALIASES:
        if key.startswith("FFF"):
            warnings.warn(
                f"{key} resolves to {CONTENT_ALIASES[key]} by the C2 character; the "
                "dimension table's 3F+/3F- columns carry the opposite parity suffixes",
                UserWarning,
                stacklevel=2,
            )
        return SECTORS[CONTENT_ALIASES[key]]
    raise ValueError(f"unknown sector {label!r}")


def classify(mu: int, tag: Tag) -> Sector:
    """Sector of |nu, mu, tag> (independent of nu)."""
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    if (tag is Tag.ZERO) != (mu == 0):
        raise ValueError(f"inconsistent tag {tag} for mu={mu}")
    if mu == 0:
        return SECTORS["A1"]
    r = mu % 6
    for s in SECTORS.values():
        if s.block_tag is tag and r in s.residues:
            return s
    raise AssertionError("unreachable: every (mu, tag) has a sector")


def sector_basis(sector: Sector | str, n_tilde: int) -> list[RelState]:
    """States of the sector with 2*nu + mu <= n_tilde, ordered by (energy, mu, nu)."""
    sector = resolve_sector(sector)
    if n_tilde < 0:
        raise ValueError("n_tilde must be nonnegative")
    states = []
    for mu in range(n_tilde + 1):
        if mu == 0:
            if sector.name != "A1":
                continue
            tag = Tag.ZERO
        elif mu % 6 in sector.residues:
            tag = sector.block_tag
        else:
            continue
        states.extend(RelState(nu, mu, tag) for nu in range((n_tilde - mu) // 2 + 1))
    states.sort(key=lambda s: (s.energy, s.mu, s.nu))
    return states


class DimensionRow(NamedTuple):
    N: int
    D_N: int
    D_Ntilde: int
    A1: int
    B2: int
    B1: int
    A2: int


def dimension_table(n_max: int) -> list[DimensionRow]:
    """Truncated-space dimensions for N = 0..n_max.

    Columns A1, B2, B1, A2 are the three-boson (+, -) and three-fermion
    sectors, in that order.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    rows = []
    for n in range(n_max + 1):
        counts = [len(sector_basis(SECTORS[s], n)) for s in ("A1", "B2", "B1", "A2")]
        rows.append(
            DimensionRow(n, (n + 1) * (n + 2) * (n + 3) // 6, (n + 1) * (n + 2) // 2, *counts)
        )
    return rows
