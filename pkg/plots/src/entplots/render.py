"""Turn entrates scan CSVs into figures.

Three kinds are supported, one per scan:

- ``fig1``: witness value f over the (p, q) plane, heatmap with the f = 0
  contour (or a 3D surface with ``surface=True``).
- ``fig3``: cost-minus-PPT-rate surface over (q, a2).
- ``limit``: ratio curve against p with a horizontal reference at 0.5.

Rendering is a pure function of the CSV content and the job options: no
clock, no network, no randomness.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

KINDS = ("fig1", "fig3", "limit")

EXPECTED_COLUMNS = {
    "fig1": ["p", "q", "D_rho", "F_rho", "D_sigma", "F_sigma",
             "f", "lower_bound", "upper_bound", "gerakol_holds"],
    "fig3": ["q", "a2", "F", "D_gamma", "diff"],
    "limit": ["p", "D_gamma", "F", "ratio"],
}

DEFAULT_CMAPS = {"fig1": "RdBu_r", "fig3": "viridis", "limit": None}


class SchemaError(ValueError):
    """CSV header does not match the plot kind."""


@dataclass(frozen=True)
class PlotJob:
    """One rendering request: which CSV, what kind of figure, where to."""

    input_csv: str
    kind: str
    output_image: str
    surface: bool = False
    cmap: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown plot kind {self.kind!r}")


def _read(path: str, kind: str):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != EXPECTED_COLUMNS[kind]:
            raise SchemaError(
                f"{path}: columns {header} do not match {kind} "
                f"(expected {EXPECTED_COLUMNS[kind]})"
            )
        rows = [
            tuple(None if cell == "" else float(cell) for cell in row)
            for row in reader
        ]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def _pivot(rows, ix: int, iy: int, iz: int):
    """Rows on a rectangular (x, y) grid -> (xs, ys, Z with NaN gaps)."""
    xs = np.array(sorted({r[ix] for r in rows}))
    ys = np.array(sorted({r[iy] for r in rows}))
    z = np.full((ys.size, xs.size), np.nan)
    xi = {v: i for i, v in enumerate(xs)}
    yi = {v: i for i, v in enumerate(ys)}
    for r in rows:
        if r[iz] is not None:
            z[yi[r[iy]], xi[r[ix]]] = r[iz]
    return xs, ys, z


def _draw_field(ax, xs, ys, z, cmap, surface, symmetric):
    if symmetric:
        bound = np.nanmax(np.abs(z))
        vmin, vmax = -bound, bound
    else:
        vmin = vmax = None
    if surface:
        gx, gy = np.meshgrid(xs, ys)
        ax.plot_surface(gx, gy, z, cmap=cmap, vmin=vmin, vmax=vmax)
        return None
    mesh = ax.pcolormesh(xs, ys, z, cmap=cmap, vmin=vmin, vmax=vmax,
                         shading="nearest")
    return mesh


def render(job: PlotJob) -> None:
    """Render one job; writes the raster image at job.output_image."""
    rows = _read(job.input_csv, job.kind)
    cmap = job.cmap or DEFAULT_CMAPS[job.kind]
    fig = plt.figure(figsize=(6.0, 4.5))
    ax = fig.add_subplot(projection="3d" if job.surface else None)

    if job.kind == "fig1":
        cols = EXPECTED_COLUMNS["fig1"]
        xs, ys, z = _pivot(rows, cols.index("p"), cols.index("q"), cols.index("f"))
        mesh = _draw_field(ax, xs, ys, z, cmap, job.surface, symmetric=True)
        if not job.surface:
            # the sign boundary is the whole point of this figure
            ax.contour(xs, ys, z, levels=[0.0], colors="k", linewidths=1.0)
            fig.colorbar(mesh, ax=ax, label="witness f")
        ax.set_xlabel("p")
        ax.set_ylabel("q")
        ax.set_title("witness f over (p, q); black line: f = 0")
    elif job.kind == "fig3":
        cols = EXPECTED_COLUMNS["fig3"]
        xs, ys, z = _pivot(rows, cols.index("q"), cols.index("a2"), cols.index("diff"))
        mesh = _draw_field(ax, xs, ys, z, cmap, job.surface, symmetric=False)
        if not job.surface:
            fig.colorbar(mesh, ax=ax, label="F - D_gamma")
        ax.set_xlabel("q")
        ax.set_ylabel("|a|^2")
        ax.set_title("cost minus PPT rate over (q, |a|^2)")
    else:  # limit
        cols = EXPECTED_COLUMNS["limit"]
        pts = [
            (r[cols.index("p")], r[cols.index("ratio")])
            for r in rows
            if r[cols.index("ratio")] is not None
        ]
        ps, ratios = zip(*sorted(pts))
        ax.plot(ps, ratios, marker="o")
        ax.axhline(0.5, color="gray", linestyle="--", label="1/2")
        ax.set_xlabel("p")
        ax.set_ylabel("D_gamma / F")
        ax.set_title("PPT-rate-to-cost ratio approaching 1/2")
        ax.legend()

    fig.tight_layout()
    fig.savefig(job.output_image, dpi=150)
    plt.close(fig)


def sign_regions(csv_path: str):
    """Count strictly positive / strictly negative f cells in a fig1 CSV."""
    rows = _read(csv_path, "fig1")
    i_f = EXPECTED_COLUMNS["fig1"].index("f")
    vals = [r[i_f] for r in rows if r[i_f] is not None]
    return sum(v > 0 for v in vals), sum(v < 0 for v in vals)
