import math
from collections import Counter

import numpy as np
import pytest

from threebody1d.oracle import (
    ORACLE_MAX_N_TILDE,
    angular_sum_complex,
    complex_basis,
    full_relative_spectrum,
    perturbative_slope_A1,
    radial_quadrature,
    tonks_reference,
)


def test_complex_basis_size():
    for n in range(10):
        assert len(complex_basis(n)) == (n + 1) * (n + 2) // 2


def test_angular_sum_values():
    for d in range(-24, 25):
        expected = 6 * (-1) ** (d // 6) if d % 6 == 0 else 0
        assert angular_sum_complex(d) == pytest.approx(expected, abs=1e-12)


def test_noninteracting_degeneracies():
    levels = Counter(np.rint(full_relative_spectrum(8, 0.0)).astype(int))
    assert levels == {n + 1: n + 1 for n in range(9)}


def test_oracle_cap():
    with pytest.raises(ValueError):
        full_relative_spectrum(ORACLE_MAX_N_TILDE + 1, 1.0)


def test_quadrature_node_override_stable():
    assert radial_quadrature(3, 2, 5, 4) == pytest.approx(radial_quadrature(3, 2, 5, 4, n_nodes=80), rel=1e-12)


def test_slope_value():
    assert perturbative_slope_A1() == pytest.approx(1.1968268412042982, rel=1e-15)


def test_tonks_levels():
    assert tonks_reference("A1", 6) == [4, 6, 8, 10, 10, 12]
    assert tonks_reference("B2", 4) == [7, 9, 11, 13]
    assert tonks_reference("B2", 1) == [7]


def test_tonks_against_enumeration():
    # hard-core spectrum: 2 nu + 3k + 1 with k odd (A1) or even >= 2 (B2)
    for sector, ks in (("A1", range(1, 40, 2)), ("B2", range(2, 40, 2))):
        all_levels = sorted(2 * nu + 3 * k + 1 for k in ks for nu in range(40))
        assert tonks_reference(sector, 25) == all_levels[:25]


def test_tonks_rejects():
    with pytest.raises(ValueError):
        tonks_reference("E1+", 3)
    with pytest.raises(ValueError):
        tonks_reference("A1", 0)


def test_hard_core_ground_is_fermionized():
    # infinite repulsion maps the bosonic ground state onto the free-fermion
    # one: three fermions in oscillator levels 0,1,2 give 4.5 total, 4 relative
    assert tonks_reference("A1", 1)[0] + 0.5 == pytest.approx(0.5 + 1.5 + 2.5)
    assert math.isclose(tonks_reference("A1", 1)[0], 4)
