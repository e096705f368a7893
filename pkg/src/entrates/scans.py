"""Parameter-grid experiments over the closed-form state families.

The witness surface f(p, q) over pairs of two-Bell-state mixtures, the
irreversibility surface F - D_Gamma over two-qubit maximally correlated
states, the analytically known anchor facts of the round-trip-difference
sketch, and the D_Gamma/F -> 1/2 separable-limit scan.

Grids are emitted as CSV (full round-trip precision, empty field for
undefined values) with a JSON metadata sidecar.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .measures import (
    BellMixtureParam,
    MaxCorr2x2Param,
    d_bell_mixture,
    f_bell_mixture,
    f_maxcorr_2x2,
    maxcorr_2x2_state,
    d_gamma_maxcorr,
    sec8_state,
    wootters_eof_2x2,
)
from .qstate import ValidationError
from .rates import cycle_ratio_singlet, gerakol_witness, singlet_relative_bounds

DEFAULT_STEP = 0.005
# starts at 0.99: between 0.9 and 0.99 the ratio briefly overshoots 1/2, so the
# approach is only monotone from 0.99 onward
DEFAULT_LIMIT_PS = (0.99, 0.999, 0.9999, 0.99999, 0.999999)
BISECT_TOL = 1e-10


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    step: float

    def points(self) -> list[float]:
        # round to the grid lattice so values like 0.505 + k*0.005 stay clean
        n = int(round((self.stop - self.start) / self.step))
        pts = [self.start + k * self.step for k in range(n + 1)]
        return [p for p in pts if p <= self.stop + 1e-12]


@dataclass
class ScanGrid:
    axes: list
    schema: list
    rows: list = field(default_factory=list)

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.schema):
                raise ValidationError("row length does not match schema")

    def append(self, row: tuple) -> None:
        if len(row) != len(self.schema):
            raise ValidationError("row length does not match schema")
        self.rows.append(tuple(row))

    def column(self, name: str) -> list:
        i = self.schema.index(name)
        return [row[i] for row in self.rows]

    def write_csv(self, path, seed: int | None = None) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(self.schema)
            for row in self.rows:
                writer.writerow(["" if v is None else _fmt(v) for v in row])
        meta = {
            "axes": [
                {"name": a.name, "start": a.start, "stop": a.stop, "step": a.step}
                for a in self.axes
            ],
            "columns": list(self.schema),
            "rows": len(self.rows),
            "seed": seed,
            "tool_version": __version__,
        }
        with open(str(path) + ".meta.json", "w") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def read_csv(path) -> tuple[list, list]:
    """Read back a scan CSV: (schema, rows); empty fields become None."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        schema = next(reader)
        rows = [
            tuple(None if cell == "" else float(cell) for cell in row) for row in reader
        ]
    return schema, rows


def _check_range(lo: float, hi: float, bound_lo: float, bound_hi: float, step: float):
    if step <= 0:
        raise ValidationError("step must be positive")
    if lo > hi or lo < bound_lo - 1e-12 or hi > bound_hi + 1e-12:
        raise ValidationError(f"range [{lo}, {hi}] outside [{bound_lo}, {bound_hi}]")


FIG1_SCHEMA = [
    "p", "q", "D_rho", "F_rho", "D_sigma", "F_sigma",
    "f", "lower_bound", "upper_bound", "gerakol_holds",
]


def fig1_scan(p_range=(0.505, 1.0), q_range=(0.505, 0.995), step=DEFAULT_STEP) -> ScanGrid:
    """Witness surface f = D^2(rho) F(sigma) - F^2(rho) D(sigma) over (p, q)."""
    _check_range(*p_range, 0.5, 1.0, step)
    _check_range(*q_range, 0.5, 1.0, step)
    axes = [Axis("p", *p_range, step), Axis("q", *q_range, step)]
    grid = ScanGrid(axes=axes, schema=list(FIG1_SCHEMA))
    for p in axes[0].points():
        d_r, f_r = d_bell_mixture(BellMixtureParam(p)), f_bell_mixture(BellMixtureParam(p))
        r_rho = cycle_ratio_singlet(d_r, f_r)
        for q in axes[1].points():
            d_s = d_bell_mixture(BellMixtureParam(q))
            f_s = f_bell_mixture(BellMixtureParam(q))
            f_val, holds = gerakol_witness(d_r, f_r, d_s, f_s)
            bounds = singlet_relative_bounds(r_rho, cycle_ratio_singlet(d_s, f_s))
            grid.append(
                (p, q, d_r, f_r, d_s, f_s, f_val, bounds.lower, bounds.upper, bool(holds))
            )
    if not grid.rows:
        raise ValidationError("empty grid")
    return grid


FIG3_SCHEMA = ["q", "a2", "F", "D_gamma", "diff"]


def fig3_scan(q_range=(0.5, 1.0), a2_range=(DEFAULT_STEP, 0.5), step=DEFAULT_STEP) -> ScanGrid:
    """Irreversibility surface F - D_Gamma over (q, |a|^2)."""
    _check_range(*q_range, 0.5, 1.0, step)
    _check_range(*a2_range, 0.0, 0.5, step)
    if a2_range[0] <= 0.0:
        raise ValidationError("|a|^2 must be strictly positive")
    axes = [Axis("q", *q_range, step), Axis("a2", *a2_range, step)]
    grid = ScanGrid(axes=axes, schema=list(FIG3_SCHEMA))
    for q in axes[0].points():
        for a2 in axes[1].points():
            param = MaxCorr2x2Param(q=q, amp_a=a2**0.5)
            f_cost = f_maxcorr_2x2(param)
            d_gamma = d_gamma_maxcorr(maxcorr_2x2_state(param))
            grid.append((q, a2, f_cost, d_gamma, f_cost - d_gamma))
    if not grid.rows:
        raise ValidationError("empty grid")
    return grid


def _witness_f(p: float, q: float) -> float:
    d_r = d_bell_mixture(BellMixtureParam(p))
    f_r = f_bell_mixture(BellMixtureParam(p))
    d_s = d_bell_mixture(BellMixtureParam(q))
    f_s = f_bell_mixture(BellMixtureParam(q))
    return d_r * d_r * f_s - f_r * f_r * d_s


def fig2_anchors(q: float, grid_step: float = 1e-3) -> dict:
    """Analytically known facts about R_Diff(p) at fixed q, plus the first
    witness-sign crossing found from p = 1 downward.

    The full curve between anchors is conjectural and deliberately not
    computed.
    """
    if not 0.5 < q < 1.0:
        raise ValidationError("q must lie in (1/2, 1)")
    d_q = d_bell_mixture(BellMixtureParam(q))
    f_q = f_bell_mixture(BellMixtureParam(q))

    # sign changes of the witness on a coarse grid over (q, 1)
    pts = [q + k * grid_step for k in range(1, int((1.0 - q) / grid_step))] + [1.0]
    signs = [_witness_f(p, q) > 0 for p in pts]
    crossings = sum(1 for s0, s1 in zip(signs, signs[1:]) if s0 != s1)

    # bisect the crossing closest to p = 1: f(1, q) > 0, f(q, q) < 0
    lo, hi = q, 1.0
    for p in reversed(pts[:-1]):
        if _witness_f(p, q) <= 0.0:
            lo = p
            break
    while hi - lo > BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if _witness_f(mid, q) > 0.0:
            hi = mid
        else:
            lo = mid
    return {
        "q": q,
        "anchors": [
            {"p": 1.0, "rdiff": 1.0 - d_q / f_q, "note": "pure rho: round trip via sigma bounded by D(sigma)/F(sigma)"},
            {"p": q, "rdiff_upper": d_q / f_q - 1.0, "note": "equal states: sign is negative"},
        ],
        "gerakol_band_edge": 0.5 * (lo + hi),
        "witness_sign_changes": crossings,
    }


LIMIT_SCHEMA = ["p", "D_gamma", "F", "ratio"]


def limit_scan(p_list=DEFAULT_LIMIT_PS) -> ScanGrid:
    """D_Gamma / F along p |00><00| + (1-p) |phi+><phi+| as p -> 1."""
    for p in p_list:
        if not 0.0 <= p <= 1.0:
            raise ValidationError(f"p = {p} outside [0, 1]")
    axes = [Axis("p", min(p_list), max(p_list), 0.0 if len(p_list) < 2 else p_list[1] - p_list[0])]
    grid = ScanGrid(axes=axes, schema=list(LIMIT_SCHEMA))
    for p in p_list:
        state = sec8_state(p)
        f_cost, _ = wootters_eof_2x2(state)
        d_gamma = d_gamma_maxcorr(state)
        ratio = None if f_cost <= 1e-12 else d_gamma / f_cost
        grid.append((p, d_gamma, f_cost, ratio))
    return grid
