import numpy as np
import pytest

from entrates.measures import (
    BellMixtureParam,
    MaxCorr2x2Param,
    MeasureReport,
    bell_mixture_state,
    concurrence_2x2,
    d_bell_mixture,
    d_gamma_maxcorr,
    f_bell_mixture,
    f_maxcorr_2x2,
    maxcorr_2x2_state,
    sec8_state,
    wootters_eof_2x2,
)
from entrates.qstate import BipartiteState, ValidationError, tensor
from conftest import random_density, random_unitary

H_08 = 0.7219280948873623
H_09 = 0.4689955935892812
D_09 = 1.0 - H_09
DGAMMA_SEC8_09 = 0.011882158196088326  # h(0.95) - S([[0.95,0.05],[0.05,0.05]]), 40-digit oracle


class TestBellMixture:
    def test_pure_endpoint(self):
        m = bell_mixture_state(BellMixtureParam(1.0)).state.matrix
        phi_minus = np.zeros(4, dtype=complex)
        phi_minus[[0, 3]] = [1, -1] / np.sqrt(2)
        assert np.allclose(m, np.outer(phi_minus, phi_minus.conj()), atol=1e-15)

    def test_separable_endpoint(self):
        m = bell_mixture_state(BellMixtureParam(0.5)).state.matrix
        assert np.allclose(m, np.diag([0.5, 0, 0, 0.5]), atol=1e-15)

    def test_projector_expansion(self):
        m = bell_mixture_state(BellMixtureParam(0.9)).state.matrix
        assert m[0, 3] == pytest.approx(-0.4)
        assert m[0, 0] == pytest.approx(0.5)

    def test_d_values(self):
        assert d_bell_mixture(BellMixtureParam(1.0)) == pytest.approx(1.0, abs=1e-12)
        assert d_bell_mixture(BellMixtureParam(0.5)) == 0.0
        assert d_bell_mixture(BellMixtureParam(0.9)) == pytest.approx(D_09, abs=1e-6)

    def test_f_values(self):
        assert f_bell_mixture(BellMixtureParam(1.0)) == pytest.approx(1.0, abs=1e-12)
        assert f_bell_mixture(BellMixtureParam(0.5)) == 0.0
        assert f_bell_mixture(BellMixtureParam(0.9)) == pytest.approx(H_08, abs=1e-6)

    def test_param_domain(self):
        with pytest.raises(ValidationError):
            BellMixtureParam(0.3)


class TestWootters:
    def test_maximally_entangled(self):
        m = np.zeros((4, 4), dtype=complex)
        m[np.ix_([0, 3], [0, 3])] = 0.5
        eof, c = wootters_eof_2x2(BipartiteState.from_array(m, 2, 2))
        assert c == pytest.approx(1.0, abs=1e-12)
        assert eof == pytest.approx(1.0, abs=1e-12)

    def test_separable(self):
        eof, c = wootters_eof_2x2(BipartiteState.from_array(np.eye(4) / 4, 2, 2))
        assert c == 0.0
        assert eof == 0.0

    def test_maxcorr_crosscheck(self):
        s = maxcorr_2x2_state(MaxCorr2x2Param(q=0.8, amp_a=np.sqrt(0.5)))
        eof, c = wootters_eof_2x2(s)
        assert c == pytest.approx(0.6, abs=1e-12)
        assert eof == pytest.approx(H_09, abs=1e-6)

    def test_rejects_wrong_dims(self):
        with pytest.raises(ValidationError):
            wootters_eof_2x2(BipartiteState.from_array(np.eye(6) / 6, 2, 3))

    def test_local_unitary_invariance(self, rng):
        for _ in range(10):
            s = BipartiteState.from_array(random_density(rng, 4), 2, 2)
            u = tensor(random_unitary(rng, 2), random_unitary(rng, 2))
            rotated = BipartiteState.from_array(u @ s.state.matrix @ u.conj().T, 2, 2)
            assert abs(wootters_eof_2x2(s)[0] - wootters_eof_2x2(rotated)[0]) < 1e-8


class TestMaxCorr2x2:
    def test_separable_mixture(self):
        m = maxcorr_2x2_state(MaxCorr2x2Param(q=0.5, amp_a=0.6)).state.matrix
        assert abs(m[0, 3]) < 1e-15

    def test_pure_maximally_entangled(self):
        param = MaxCorr2x2Param(q=1.0, amp_a=np.sqrt(0.5))
        eof, _ = wootters_eof_2x2(maxcorr_2x2_state(param))
        assert eof == pytest.approx(1.0, abs=1e-12)
        assert f_maxcorr_2x2(param) == pytest.approx(1.0, abs=1e-12)

    def test_amatrix_entries(self):
        m = maxcorr_2x2_state(MaxCorr2x2Param(q=0.8, amp_a=np.sqrt(0.5))).state.matrix
        assert m[0, 3] == pytest.approx(-0.3, abs=1e-12)

    def test_f_closed_form(self):
        assert f_maxcorr_2x2(MaxCorr2x2Param(q=0.5, amp_a=0.6)) == 0.0
        assert f_maxcorr_2x2(
            MaxCorr2x2Param(q=0.8, amp_a=np.sqrt(0.5))
        ) == pytest.approx(H_09, abs=1e-6)

    def test_concurrence_equals_off_diagonal(self, rng):
        for _ in range(30):
            q = 0.5 + 0.5 * rng.random()
            a2 = 0.02 + 0.48 * rng.random()
            s = maxcorr_2x2_state(MaxCorr2x2Param(q=q, amp_a=np.sqrt(a2)))
            assert abs(concurrence_2x2(s) - 2 * abs(s.state.matrix[0, 3])) < 1e-9


class TestDGamma:
    def test_pure_bell(self):
        m = np.zeros((4, 4), dtype=complex)
        m[np.ix_([0, 3], [0, 3])] = 0.5
        assert d_gamma_maxcorr(BipartiteState.from_array(m, 2, 2)) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_separable_diagonal(self):
        m = np.diag([0.3, 0.0, 0.0, 0.7]).astype(complex)
        assert d_gamma_maxcorr(BipartiteState.from_array(m, 2, 2)) == 0.0

    def test_sec8_value(self):
        assert d_gamma_maxcorr(sec8_state(0.9)) == pytest.approx(
            DGAMMA_SEC8_09, abs=1e-9
        )

    def test_rejects_non_maxcorr(self, rng):
        with pytest.raises(ValidationError):
            d_gamma_maxcorr(BipartiteState.from_array(random_density(rng, 4), 2, 2))


class TestFamilyInvariants:
    GRID = np.linspace(0.5005, 0.9995, 1000)

    def test_strict_irreversibility(self):
        for p in self.GRID:
            d = d_bell_mixture(BellMixtureParam(p))
            f = f_bell_mixture(BellMixtureParam(p))
            assert 0.0 < d < f < 1.0

    def test_f_matches_wootters(self):
        for p in self.GRID[::7]:
            s = bell_mixture_state(BellMixtureParam(p))
            assert abs(f_bell_mixture(BellMixtureParam(p)) - wootters_eof_2x2(s)[0]) < 1e-9

    def test_d_matches_d_gamma(self):
        for p in self.GRID[::7]:
            s = bell_mixture_state(BellMixtureParam(p))
            assert abs(d_bell_mixture(BellMixtureParam(p)) - d_gamma_maxcorr(s)) < 1e-9

    def test_cost_exceeds_ppt_distillable(self):
        for q in np.linspace(0.51, 0.99, 25):
            for a2 in np.linspace(0.02, 0.5, 25):
                param = MaxCorr2x2Param(q=q, amp_a=np.sqrt(a2))
                gap = f_maxcorr_2x2(param) - d_gamma_maxcorr(maxcorr_2x2_state(param))
                assert gap > 0.0


class TestMeasureReport:
    def test_rejects_cost_below_distillable(self):
        with pytest.raises(ValidationError):
            MeasureReport(d=0.9, f_cost=0.5, d_gamma=0.9, cycle_ratio=None)

    def test_json_shape(self):
        doc = MeasureReport(
            d=0.5, f_cost=0.7, d_gamma=0.5, cycle_ratio=None, flags=["closed-form"]
        ).to_json_dict()
        assert set(doc) == {"D", "F", "D_gamma", "cycle_ratio", "flags"}
        assert doc["cycle_ratio"] is None
