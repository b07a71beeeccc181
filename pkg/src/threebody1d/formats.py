"""Delimited and JSON writers for tables produced by the library.

Writers take an open text stream so the CLI can target files or stdout.
CSV bodies carry no timestamps; run metadata goes to JSON sidecars.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import IO, Iterable, Sequence

from .hamiltonian import HamiltonianBlock, total_energy
from .solver import ConvergenceTable, SpectrumTable
from .symmetry import DimensionRow
from .wavefield import DensityGrid

MATRIX_HEADER = ("sector", "n_tilde", "i", "j", "nu_i", "mu_i", "tag_i", "nu_j", "mu_j", "tag_j", "w")
SPECTRUM_HEADER = ("sector", "n_tilde", "c", "level", "rel_energy", "total_energy_eta0")
DIMENSION_HEADER = ("N", "D_N", "D_Ntilde", "A1", "B2", "B1", "A2")


def _g17(x: float) -> str:
    return f"{x:.17g}"


def _g12(x: float) -> str:
    return f"{x:.12g}"


def _writer(stream: IO[str]):
    return csv.writer(stream, lineterminator="\n")


def write_dimension_table(rows: Iterable[DimensionRow], stream: IO[str], fmt: str = "csv") -> None:
    rows = list(rows)
    if fmt == "json":
        json.dump([r._asdict() for r in rows], stream, indent=2)
        stream.write("\n")
        return
    w = _writer(stream)
    w.writerow(DIMENSION_HEADER)
    w.writerows(rows)


def write_matrix_elements(block: HamiltonianBlock, stream: IO[str]) -> None:
    """Upper triangle (i <= j) of the interaction matrix W."""
    w = _writer(stream)
    w.writerow(MATRIX_HEADER)
    b = block.basis
    for i in range(block.dim):
        for j in range(i, block.dim):
            w.writerow(
                (block.sector.name, block.n_tilde, i, j,
                 b[i].nu, b[i].mu, b[i].tag.value, b[j].nu, b[j].mu, b[j].tag.value,
                 _g17(block.w[i, j]))
            )


def write_spectrum(table: SpectrumTable, stream: IO[str], tonks: Sequence[float] | None = None) -> None:
    """Spectrum rows; an optional hard-core reference series is appended with c = inf."""
    w = _writer(stream)
    w.writerow(SPECTRUM_HEADER)
    name = table.sector.name
    for c, level, e in table.rows():
        w.writerow((name, table.n_tilde, _g12(c), level, _g12(e), _g12(total_energy(e))))
    for level, e in enumerate(tonks or ()):
        w.writerow((name, table.n_tilde, "inf", level, _g12(e), _g12(total_energy(e))))


def write_spectrum_metadata(table: SpectrumTable, path: Path, extra: dict | None = None) -> None:
    meta = dict(table.metadata)
    meta["grid"] = {"n_points": int(table.couplings.size),
                    "c_min": float(table.couplings[0]), "c_max": float(table.couplings[-1])}
    if extra:
        meta.update(extra)
    path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def write_convergence(table: ConvergenceTable, stream: IO[str]) -> None:
    w = _writer(stream)
    w.writerow(("sector", "c", "n_tilde", "level", "rel_energy"))
    for n, levels in zip(table.n_tildes, table.levels):
        for k, e in enumerate(levels):
            w.writerow((table.sector.name, _g12(table.c), n, k, _g12(e)))


def write_density(density, grid: DensityGrid, stream: IO[str], *, sector: str, c: float,
                  level: int, weighted: bool) -> None:
    stream.write(f"# sector={sector}\n")
    stream.write(f"# c={_g12(c)}\n")
    stream.write(f"# level={level}\n")
    stream.write(f"# grid rho_max={_g12(grid.rho_max)} n_rho={grid.n_rho} n_phi={grid.n_phi}\n")
    stream.write(f"# measure={'rho-weighted' if weighted else 'unweighted'}\n")
    w = _writer(stream)
    w.writerow(("rho", "phi", "density"))
    rho, phi = grid.rho, grid.phi
    for i, r in enumerate(rho):
        for j, p in enumerate(phi):
            w.writerow((_g12(r), _g12(p), _g12(density[i, j])))
