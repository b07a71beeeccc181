"""Verification suite: every computed quantity against an independent route."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from .hamiltonian import angular_A, angular_closed_form, build_block, v_coefficient
from .oracle import full_relative_spectrum, perturbative_slope_A1, radial_quadrature, tonks_reference
from .solver import spectrum, sweep
from .specfun import _radial_exact, radial_R
from .symmetry import SECTORS, RelState, Tag, classify, dimension_table, sector_basis

# Reference truncated-space dimensions for N = 0..12: (D_N, D_Ntilde, A1, B2, B1, A2).
REFERENCE_DIMENSIONS = (
    (1, 1, 1, 0, 0, 0),
    (4, 3, 1, 0, 0, 0),
    (10, 6, 2, 0, 0, 0),
    (20, 10, 2, 1, 1, 0),
    (35, 15, 3, 1, 1, 0),
    (56, 21, 3, 2, 2, 0),
    (84, 28, 5, 2, 2, 1),
    (120, 36, 5, 3, 3, 1),
    (165, 45, 7, 3, 3, 2),
    (220, 55, 7, 5, 5, 2),
    (286, 66, 9, 5, 5, 3),
    (364, 78, 9, 7, 7, 3),
    (455, 91, 12, 7, 7, 5),
)


@dataclass
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float
    passed: bool
    seconds: float = 0.0

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name:<32s} dev={self.max_deviation:.3e}  tol={self.tolerance:.1e}"


def _result(name, dev, tol, *, le=True):
    dev = float(dev)
    return CheckResult(name, dev, tol, bool(dev <= tol) if le else bool(dev < tol))


def _states(n_max):
    return [(nu, mu) for mu in range(n_max + 1) for nu in range((n_max - mu) // 2 + 1)]


def radial_deviation(n_max: int) -> float:
    """Largest deviation of radial_R from quadrature over 2nu+mu, 2nu'+mu' <= n_max.

    Relative where R != 0; where the exact sum vanishes (orthogonality for odd
    mu + mu'), the quadrature value itself is returned scaled by 1e3 so the
    same tolerance requires |Q| <= 1e-12.
    """
    worst = 0.0
    for (a, b), (c, d) in itertools.product(_states(n_max), repeat=2):
        r = radial_R(a, b, c, d)
        q = radial_quadrature(a, b, c, d)
        dev = abs(r - q) / abs(r) if r != 0.0 else 1e3 * abs(q)
        worst = max(worst, dev)
    return worst


def check_dimensions():
    rows = dimension_table(12)
    bad = sum(tuple(r)[1:] != ref for r, ref in zip(rows, REFERENCE_DIMENSIONS))
    return _result("dimension_table", bad, 0)


def check_sector_sizes():
    got = (len(sector_basis("A1", 30)), len(sector_basis("B2", 30)))
    return _result("sector_sizes_n30", abs(got[0] - 51) + abs(got[1] - 40), 0)


def check_angular(mu_max):
    worst = 0.0
    for tp, t in itertools.product(Tag, repeat=2):
        mps = [0] if tp is Tag.ZERO else range(1, mu_max + 1)
        ms = [0] if t is Tag.ZERO else range(1, mu_max + 1)
        for mp, m in itertools.product(mps, ms):
            worst = max(worst, abs(angular_A(tp, mp, t, m) - angular_closed_form(tp, mp, t, m)))
    return _result("angular_closed_forms", worst, 1e-12)


def check_radial(n_max):
    return _result(f"radial_vs_quadrature_n{n_max}", radial_deviation(n_max), 1e-9)


def check_radial_symmetry(n_max):
    worst = 0.0
    for (a, b), (c, d) in itertools.combinations(_states(n_max), 2):
        # both argument orders evaluated independently, bypassing the canonical cache key
        r = float(_radial_exact(a, b, c, d))
        if r != 0.0:
            worst = max(worst, abs(r - float(_radial_exact(c, d, a, b))) / abs(r))
    return _result("radial_exchange_symmetry", worst, 1e-12)


def check_slope_element():
    s0 = RelState(0, 0, Tag.ZERO)
    return _result("slope_matrix_element", abs(v_coefficient(s0, s0) - perturbative_slope_A1()), 1e-12)


def check_slope(n_tilde):
    block = build_block("A1", n_tilde)
    h = 1e-4
    fd = (spectrum(block, None, h)[0] - spectrum(block, None, -h)[0]) / (2 * h)
    return _result("slope_finite_difference", abs(fd - perturbative_slope_A1()), 1e-6)


def check_fermion_flatness(n_tilde):
    worst = 0.0
    for name in ("A2", "B1"):
        block = build_block(name, n_tilde)
        worst = max(worst, float(np.max(np.abs(block.w), initial=0.0)))
        e0 = spectrum(block, None, 0.0)
        for c in (-10.0, -1.0, 1.0, 10.0):
            worst = max(worst, float(np.max(np.abs(spectrum(block, None, c) - e0), initial=0.0)))
    return _result("fermion_flatness", worst, 1e-12)


def check_sector_union(n_list):
    worst = 0.0
    for n in n_list:
        blocks = [build_block(s, n) for s in SECTORS.values()]
        for c in (-4.0, -1.0, 0.0, 1.0, 4.0):
            union = np.sort(np.concatenate([spectrum(b, None, c) for b in blocks]))
            full = full_relative_spectrum(n, c)
            worst = max(worst, float(np.max(np.abs(union - full))))
    return _result("sector_union_vs_full_basis", worst, 1e-8)


def check_e_doubling(n_tilde):
    worst = 0.0
    for irrep in ("E1", "E2"):
        plus, minus = build_block(irrep + "+", n_tilde), build_block(irrep + "-", n_tilde)
        for c in (-5.0, 5.0):
            worst = max(worst, float(np.max(np.abs(spectrum(plus, None, c) - spectrum(minus, None, c)))))
    return _result("e_block_doubling", worst, 1e-10)


def check_monotonic(n_tilde, step):
    grid = np.round(np.arange(-10.0, 10.0 + step / 2, step), 12)
    worst = 0.0
    for s in SECTORS.values():
        table = sweep(s, n_tilde, grid)
        if table.energies.size:
            worst = max(worst, float(np.max(-np.diff(table.energies, axis=0), initial=0.0)))
    return _result("coupling_monotonicity", worst, 1e-9)


def check_variational(n_list):
    block_levels = [spectrum("A1", n, 5.0)[0] for n in n_list]
    worst = float(np.max(np.diff(block_levels), initial=-np.inf))
    return _result("variational_convergence", max(worst, 0.0), 1e-10)


def check_unitary_limit():
    ref = tonks_reference("A1", 2)
    devs = {}
    for n in (20, 24, 28, 32, 36, 40):
        e = spectrum("A1", n, 100.0)
        devs[n] = (abs(e[0] - ref[0]), abs(e[1] - ref[1]))
    d40 = devs[40]
    shrinking = all(devs[a][k] > devs[b][k] for a, b in zip(devs, list(devs)[1:]) for k in (0, 1))
    dev = max(d40[0] / 0.3, d40[1] / 0.4)
    if not shrinking:
        dev = math.inf
    return _result("unitary_limit_n40", dev, 1.0)


def check_trimer():
    a1 = spectrum("A1", 30, -8.0)[0]
    b2 = spectrum("B2", 30, -8.0)[0]
    # passes when the A1 ground state lies strictly below the B2 one
    return _result("trimer_below_b2", a1 - b2, 0.0, le=False)


def check_classify_period():
    bad = sum(
        classify(mu, t) is not classify(mu + 6, t) for mu in range(1, 48) for t in (Tag.PLUS, Tag.MINUS)
    )
    return _result("classification_period6", bad, 0)


def run_checks(quick: bool = False) -> list[CheckResult]:
    if quick:
        plan = [
            check_dimensions,
            check_classify_period,
            lambda: check_angular(12),
            lambda: check_radial(8),
            lambda: check_radial_symmetry(8),
            check_slope_element,
            lambda: check_slope(8),
            lambda: check_fermion_flatness(8),
            lambda: check_sector_union((4, 6, 8)),
            lambda: check_e_doubling(8),
            lambda: check_monotonic(8, 0.5),
            lambda: check_variational((2, 4, 6, 8)),
        ]
    else:
        plan = [
            check_dimensions,
            check_sector_sizes,
            check_classify_period,
            lambda: check_angular(48),
            lambda: check_radial(20),
            lambda: check_radial_symmetry(20),
            check_slope_element,
            lambda: check_slope(30),
            lambda: check_fermion_flatness(30),
            lambda: check_sector_union((4, 6, 8, 10)),
            lambda: check_e_doubling(30),
            lambda: check_monotonic(30, 0.1),
            lambda: check_variational((6, 10, 14, 18, 22, 26, 30)),
            check_unitary_limit,
            check_trimer,
        ]
    results = []
    for fn in plan:
        t0 = time.perf_counter()
        r = fn()
        r.seconds = round(time.perf_counter() - t0, 3)
        results.append(r)
    return results


def report(results: list[CheckResult]) -> dict:
    return {
        "passed": all(r.passed for r in results),
        "checks": [asdict(r) for r in results],
    }
