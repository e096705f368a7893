import numpy as np
import pytest

from entrates.qstate import ValidationError
from entrates.scans import (
    DEFAULT_LIMIT_PS,
    FIG1_SCHEMA,
    FIG3_SCHEMA,
    fig1_scan,
    fig2_anchors,
    fig3_scan,
    limit_scan,
    read_csv,
)


def rows_by_key(grid, *keys):
    idx = [grid.schema.index(k) for k in keys]
    return {tuple(round(r[i], 9) for i in idx[:-1]): r[idx[-1]] for r in grid.rows}


class TestFig1:
    def test_diagonal_point_negative(self):
        grid = fig1_scan(p_range=(0.7, 0.7), q_range=(0.7, 0.7), step=0.01)
        assert grid.rows[0][FIG1_SCHEMA.index("f")] < 0.0

    def test_witness_point_positive(self):
        grid = fig1_scan(p_range=(0.99, 0.99), q_range=(0.7, 0.7), step=0.01)
        row = dict(zip(grid.schema, grid.rows[0]))
        assert row["f"] > 0.0
        assert row["gerakol_holds"]

    def test_pure_rho_row(self):
        grid = fig1_scan(p_range=(1.0, 1.0), q_range=(0.55, 0.95), step=0.05)
        for row in grid.rows:
            r = dict(zip(grid.schema, row))
            assert r["f"] == pytest.approx(r["F_sigma"] - r["D_sigma"], abs=1e-12)
            assert r["f"] > 0.0

    def test_bounds_ordered(self):
        grid = fig1_scan(p_range=(0.55, 0.95), q_range=(0.55, 0.95), step=0.05)
        for row in grid.rows:
            r = dict(zip(grid.schema, row))
            if r["lower_bound"] is not None and r["upper_bound"] is not None:
                assert r["lower_bound"] <= r["upper_bound"] + 1e-12

    def test_row_count(self):
        grid = fig1_scan(p_range=(0.6, 0.7), q_range=(0.6, 0.9), step=0.05)
        assert len(grid.rows) == 3 * 7
        assert all(len(row) == len(FIG1_SCHEMA) for row in grid.rows)

    def test_rejects_bad_ranges(self):
        with pytest.raises(ValidationError):
            fig1_scan(p_range=(0.2, 0.9), q_range=(0.6, 0.9), step=0.01)
        with pytest.raises(ValidationError):
            fig1_scan(p_range=(0.6, 0.9), q_range=(0.6, 0.9), step=-0.1)


class TestFig3:
    def test_pure_edge_vanishes(self):
        grid = fig3_scan(q_range=(1.0, 1.0), a2_range=(0.5, 0.5), step=0.01)
        assert grid.rows[0][FIG3_SCHEMA.index("diff")] == pytest.approx(0.0, abs=1e-9)

    def test_separable_edge_vanishes(self):
        grid = fig3_scan(q_range=(0.5, 0.5), a2_range=(0.05, 0.5), step=0.05)
        for row in grid.rows:
            assert row[FIG3_SCHEMA.index("diff")] == pytest.approx(0.0, abs=1e-9)

    def test_interior_strictly_positive(self):
        grid = fig3_scan(q_range=(0.52, 0.98), a2_range=(0.02, 0.5), step=0.02)
        assert min(grid.column("diff")) > 0.0

    def test_known_point(self):
        grid = fig3_scan(q_range=(0.8, 0.8), a2_range=(0.5, 0.5), step=0.01)
        row = dict(zip(grid.schema, grid.rows[0]))
        assert row["F"] == pytest.approx(0.4689955935892812, abs=1e-6)
        assert row["diff"] > 0.0


class TestFig2Anchors:
    def test_anchor_signs(self):
        rep = fig2_anchors(2.0 / 3.0)
        by_p = {a["p"]: a for a in rep["anchors"]}
        assert by_p[1.0]["rdiff"] > 0.0
        assert by_p[2.0 / 3.0]["rdiff_upper"] < 0.0

    def test_band_edge_is_crossing(self):
        from entrates.scans import _witness_f

        rep = fig2_anchors(2.0 / 3.0)
        p_star = rep["gerakol_band_edge"]
        assert 2.0 / 3.0 < p_star < 1.0
        assert abs(_witness_f(p_star, 2.0 / 3.0)) < 1e-6
        assert _witness_f(p_star + 1e-4, 2.0 / 3.0) > 0.0
        assert _witness_f(p_star - 1e-4, 2.0 / 3.0) < 0.0

    def test_sign_change_count_present(self):
        rep = fig2_anchors(0.75)
        assert rep["witness_sign_changes"] >= 1

    def test_domain(self):
        with pytest.raises(ValidationError):
            fig2_anchors(0.5)


class TestLimitScan:
    def test_endpoints(self):
        grid = limit_scan((1e-12, 1.0))
        first = dict(zip(grid.schema, grid.rows[0]))
        last = dict(zip(grid.schema, grid.rows[1]))
        assert first["ratio"] == pytest.approx(1.0, abs=1e-5)  # pure phi+
        assert last["F"] == pytest.approx(0.0, abs=1e-9)  # product state
        assert last["ratio"] is None

    def test_default_list_approaches_half(self):
        grid = limit_scan()
        ratios = grid.column("ratio")
        devs = [abs(r - 0.5) for r in ratios]
        assert all(b <= a + 1e-12 for a, b in zip(devs, devs[1:]))
        assert devs[-1] < 0.05


class TestCsv:
    def test_roundtrip_precision(self, tmp_path):
        grid = fig1_scan(p_range=(0.55, 0.65), q_range=(0.55, 0.65), step=0.05)
        path = tmp_path / "fig1.csv"
        grid.write_csv(path, seed=0)
        schema, rows = read_csv(path)
        assert schema == grid.schema
        assert len(rows) == len(grid.rows)
        for got, want in zip(rows, grid.rows):
            for g, w in zip(got, want):
                if w is None:
                    assert g is None
                elif isinstance(w, bool):
                    assert g == float(w)
                else:
                    assert g == pytest.approx(w, rel=1e-12)
        meta = (tmp_path / "fig1.csv.meta.json").read_text()
        assert "axes" in meta and "tool_version" in meta

    def test_undefined_written_empty(self, tmp_path):
        grid = limit_scan((1.0,))
        path = tmp_path / "limit.csv"
        grid.write_csv(path)
        lines = path.read_text().strip().splitlines()
        assert lines[1].endswith(",")  # trailing empty ratio field


class TestSmoothness:
    def test_refinement_introduces_no_jumps(self):
        # interior distillable window: refine the step and compare against
        # the coarse grid's own adjacent-cell variation
        coarse = fig1_scan(p_range=(0.7, 0.8), q_range=(0.7, 0.8), step=0.02)
        fine = fig1_scan(p_range=(0.7, 0.8), q_range=(0.7, 0.8), step=0.01)
        for col in ("D_rho", "F_rho", "f", "lower_bound", "upper_bound"):
            cvals = rows_by_key(coarse, "p", "q", col)
            fvals = rows_by_key(fine, "p", "q", col)
            max_adjacent = max(
                abs(cvals[a] - cvals[b])
                for a in cvals
                for b in cvals
                if abs(a[0] - b[0]) + abs(a[1] - b[1]) <= 0.02 + 1e-9 and a != b
            )
            for key, val in fvals.items():
                nearest = min(
                    cvals, key=lambda c: abs(c[0] - key[0]) + abs(c[1] - key[1])
                )
                assert abs(val - cvals[nearest]) <= max_adjacent + 1e-12
