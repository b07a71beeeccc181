import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from threebody1d.hamiltonian import build_block
from threebody1d.solver import eigensolve_symmetric
from threebody1d.symmetry import GROUP_ELEMENTS, RelState, Tag, character, classify, sector_basis
from threebody1d.wavefield import (
    DensityGrid,
    RelPoint,
    eigen_density,
    jacobi_to_polar,
    normalization_residual,
    particle_to_jacobi,
    psi_cm,
    psi_rel,
)

GRID = DensityGrid(rho_max=9.0, n_rho=2401, n_phi=360)
RAYS = [(2 * i - 1) * math.pi / 6 for i in range(1, 7)]


def overlap(a: RelState, b: RelState) -> float:
    rho, phi = GRID.rho[:, None], GRID.phi[None, :]
    return GRID.integrate(psi_rel(a, rho, phi) * psi_rel(b, rho, phi) * rho)


def states_up_to(n):
    out = [RelState(nu, 0, Tag.ZERO) for nu in range(n // 2 + 1)]
    for mu in range(1, n + 1):
        for nu in range((n - mu) // 2 + 1):
            out += [RelState(nu, mu, Tag.PLUS), RelState(nu, mu, Tag.MINUS)]
    return out


class TestBasis:
    def test_gram_matrix(self):
        basis = states_up_to(6)
        gram = np.array([[overlap(a, b) for b in basis] for a in basis])
        np.testing.assert_allclose(gram, np.eye(len(basis)), atol=1e-8)

    def test_ground_value(self):
        s0 = RelState(0, 0, Tag.ZERO)
        assert psi_rel(s0, 0.0) == pytest.approx(1 / math.sqrt(math.pi))
        assert psi_rel(s0, RelPoint(0.0, 0.0, True)) == pytest.approx(1 / math.sqrt(math.pi))

    @pytest.mark.parametrize("eta", range(6))
    def test_cm_normalized(self, eta):
        val, _ = quad(lambda z: psi_cm(eta, z) ** 2, -np.inf, np.inf)
        assert val == pytest.approx(1.0, abs=1e-10)

    def test_cm_rejects(self):
        with pytest.raises(ValueError):
            psi_cm(-1, 0.0)

    @settings(max_examples=40)
    @given(st.integers(1, 18), st.sampled_from([Tag.PLUS, Tag.MINUS]), st.floats(0.1, 3.0))
    def test_symmetry_characters(self, mu, tag, rho):
        sector = classify(mu, tag)
        if sector.c6v_irrep not in ("A1", "A2", "B1", "B2"):
            return
        s = RelState(0, mu, tag)
        for g in GROUP_ELEMENTS:
            chi = character(sector.c6v_irrep, g.cls)
            for phi in (0.3, 1.7, 4.1):
                assert psi_rel(s, rho, float(g(phi))) == pytest.approx(chi * psi_rel(s, rho, phi), abs=1e-12)

    @pytest.mark.parametrize("name", ["A2", "B1"])
    def test_fermionic_nodes_on_coincidence_rays(self, name):
        for s in sector_basis(name, 20):
            for phi in RAYS:
                assert abs(psi_rel(s, 1.3, phi)) < 1e-12


class TestCoordinates:
    def test_particle_to_jacobi(self):
        x, y, z = particle_to_jacobi([1.0, 2.0, 3.0])
        assert x == pytest.approx(-1 / math.sqrt(2))
        assert y == pytest.approx((1 + 2 - 6) / math.sqrt(6))
        assert z == pytest.approx(6 / math.sqrt(3))

    def test_coincidence_lands_on_rays(self):
        # q_i = q_j puts the relative point on one of the six rays
        for q in ([0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, -1.0, 0.0], [-1.0, 0.0, 0.0]):
            x, y, _ = particle_to_jacobi(q)
            p = jacobi_to_polar(x, y)
            assert min(abs(math.remainder(p.phi - r, 2 * math.pi)) for r in RAYS) < 1e-12

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            particle_to_jacobi([1.0, 2.0])
        np.testing.assert_allclose(particle_to_jacobi(np.zeros((4, 3))), np.zeros((4, 3)))

    def test_polar(self):
        p = jacobi_to_polar(0.0, -2.0)
        assert p.rho == 2.0 and p.phi == pytest.approx(1.5 * math.pi) and not p.degenerate
        assert jacobi_to_polar(0.0, 0.0).degenerate
        with pytest.raises(ValueError):
            RelPoint(-1.0, 0.0)


class TestDensity:
    @pytest.mark.parametrize("name, c", [("A1", 5.0), ("B2", -2.0), ("E1+", 1.0)])
    def test_normalization(self, name, c):
        block = build_block(name, 16)
        _, vecs = eigensolve_symmetric(block.matrix(c))
        grid = DensityGrid(rho_max=8.0, n_rho=401, n_phi=360)
        dens = eigen_density(block, vecs[:, 0], grid)
        assert normalization_residual(dens, grid) < 1e-6
        weighted = eigen_density(block, vecs[:, 0], grid, weighted=True)
        assert normalization_residual(weighted, grid, weighted=True) < 1e-6

    def test_unnormalized_vector_accepted(self):
        block = build_block("A1", 6)
        grid = DensityGrid(rho_max=8.0, n_rho=201, n_phi=120)
        a = eigen_density(block, np.ones(block.dim), grid)
        b = eigen_density(block, 3 * np.ones(block.dim), grid)
        np.testing.assert_allclose(a, b)

    def test_shape_mismatch(self):
        block = build_block("A1", 6)
        with pytest.raises(ValueError):
            eigen_density(block, np.ones(block.dim + 1))

    def test_strong_repulsion_depletes_rays(self):
        block = build_block("A1", 30)
        _, vecs = eigensolve_symmetric(block.matrix(100.0))
        grid = DensityGrid(rho_max=5.0, n_rho=101, n_phi=360)
        dens = eigen_density(block, vecs[:, 0], grid)
        ray_col = 30  # phi = pi/6 on a 360-point grid
        mid_col = 0  # phi = 0, a wedge bisector
        assert dens[:, ray_col].max() < 0.1 * dens[:, mid_col].max()
