import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from axialcurv.classify import classify
from axialcurv.curvatures import (
    associated_slice,
    axial_closed_n2,
    axial_closed_n3,
    axial_oracle,
    axial_report,
    curve_curvature,
    formula_m3_case_split,
    normal_curvature_form,
    principal_curvatures,
    regular_slice,
)
from axialcurv.errors import NoCriticalValue, SingularCurveError, UnsupportedError
from axialcurv.frames import adapted_frame
from axialcurv.jetcore import MongeJet, PolyMapGerm
from axialcurv.locus import Boundedness, TangentParam, boundedness_diagnostic, locus_param
from axialcurv.random_jets import random_jet, tags_for

R2 = math.sqrt(2)
SUPPORTED = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]


def close_multiset(a, b, atol=1e-8):
    a, b = sorted(a), sorted(b)
    return len(a) == len(b) and all(abs(x - y) <= atol * max(1.0, abs(x)) for x, y in zip(a, b))


class TestNormalCurvatureForm:
    def test_worked_example(self, fixture_jet):
        _, m, _ = fixture_jet("r4_z2_worked")
        F = normal_curvature_form(m, [0, 1])
        c = F.coeffs
        assert (c["a"], c["b"], c["d"], c["p"], c["q"], c["C"]) == pytest.approx((3, 1, 1, 0, 0, 1))
        for t in np.linspace(0, 2 * np.pi, 13):
            assert F(t, 0.0) == pytest.approx(1 + math.sin(2 * t) + 2 * math.cos(t) ** 2)

    def test_zero_jet(self):
        F = normal_curvature_form(MongeJet(3, 2, np.zeros((3, 3, 3))), [0, 0, 1])
        assert all(v == 0 for v in F.coeffs.values())

    def test_surface_null_coefficient(self):
        a02 = np.array([3.0, -4.0])
        m = MongeJet.from_symbols(a20=[1, 2], a11=[0, 1], a02=a02)
        F = normal_curvature_form(m, a02 / 5)
        assert F.coeffs["nn"] == pytest.approx(5.0)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from(SUPPORTED))
    def test_matches_locus(self, seed, nk):
        n, k = nk
        rng = np.random.default_rng(seed)
        tags = tags_for(n, k)
        m = random_jet(n, k, tags[int(rng.integers(len(tags)))], rng)
        v = rng.standard_normal(k + 1)
        v /= np.linalg.norm(v)
        F = normal_curvature_form(m, v)
        for _ in range(100):
            t, g = rng.uniform(0, 2 * np.pi), rng.uniform(-5, 5)
            p = TangentParam.surface(g) if n == 2 else TangentParam(t, g)
            assert F(t, g) == pytest.approx(locus_param(m, p) @ v, abs=1e-12 * max(1, m.scale) * 26)


class TestOracle:
    def test_worked_primary(self, fixture_jet):
        _, m, _ = fixture_jet("r4_z2_worked")
        assert close_multiset(axial_oracle(m, [0, 1]).values, [2 - R2, 2 + R2], 1e-9)

    def test_plane_orbit_value(self, fixture_jet):
        _, m, exp = fixture_jet("r4_xzyz_worked")
        assert close_multiset(axial_oracle(m, exp["oracle"]["direction"]).values, exp["oracle"]["values"])

    @pytest.mark.parametrize("nk", SUPPORTED)
    def test_zero_jet(self, nk):
        n, k = nk
        v = np.zeros(k + 1)
        v[0] = 1
        assert axial_oracle(MongeJet(n, k, np.zeros((k + 1, n, n))), v).values == [0.0]

    def test_surface_vertex(self):
        m = MongeJet.from_symbols(a20=[1.0, 0.0], a11=[2.0, 0.0], a02=[4.0, 0.0])
        r = axial_oracle(m, [1.0, 0.0])
        assert r.values == pytest.approx([0.0])
        assert r.params[0]["y"] == pytest.approx(-0.5)

    def test_surface_linear_has_no_value(self):
        m = MongeJet.from_symbols(a20=[1.0, 0.0], a11=[2.0, 0.0], a02=[0.0, 0.0])
        assert axial_oracle(m, [1.0, 0.0]).values == []

    def test_non_finite(self):
        with pytest.raises(NoCriticalValue):
            axial_oracle(MongeJet(3, 1, np.zeros((2, 3, 3))), [np.nan, 0])

    def test_grid_robustness(self, rng):
        for n, k in [(3, 1), (3, 2)]:
            for tag in tags_for(n, k):
                m = random_jet(n, k, tag, rng)
                v = rng.standard_normal(k + 1)
                v /= np.linalg.norm(v)
                a = axial_oracle(m, v, grid=4096).values
                b = axial_oracle(m, v, grid=8192).values
                assert len(a) == len(b)
                assert np.allclose(a, b, atol=1e-9)

    def test_critical_point_types(self, fixture_jet):
        _, m, _ = fixture_jet("r4_z2_worked")
        assert sorted(axial_oracle(m, [0, 1]).types) == ["min", "saddle"]


class TestClosedN2:
    def test_formulas_example(self, fixture_jet):
        _, m, exp = fixture_jet("cuspidal_edge_r4")
        fr = adapted_frame(m)
        out = axial_closed_n2(m, fr)
        assert out[1] == pytest.approx(exp["axial"]["1"])
        assert out[2] == pytest.approx(exp["axial"]["2"])
        assert out[1][0] ** 2 + out[2][0] ** 2 == pytest.approx(exp["curve_curvature"] ** 2)

    def test_point_at_origin(self):
        m = MongeJet.from_symbols(a20=[0, 0], a11=[0, 0], a02=[0, 0])
        out = axial_closed_n2(m, adapted_frame(m))
        assert out == {1: [0.0], 2: [0.0]}

    def test_point_distance(self, fixture_jet):
        _, m, exp = fixture_jet("surface_point_k1")
        out = axial_closed_n2(m, adapted_frame(m))
        assert out[2] == pytest.approx(exp["axial"]["2"])

    def test_line_has_no_primary(self, fixture_jet):
        _, m, _ = fixture_jet("surface_line_k1")
        assert axial_closed_n2(m, adapted_frame(m))[1] == []

    def test_parabola_has_no_secondary(self, fixture_jet):
        _, m, _ = fixture_jet("surface_parabola_k1")
        assert axial_closed_n2(m, adapted_frame(m))[2] == []

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_half_line_against_oracle(self, k, rng):
        for _ in range(50):
            m = random_jet(2, k, "HalfLine", rng)
            fr = adapted_frame(m)
            closed = axial_closed_n2(m, fr)
            oracle = axial_oracle(m, fr.vectors[0]).values
            assert closed[1][0] == pytest.approx(min(oracle), abs=1e-8 * max(1, m.scale))


class TestClosedN3:
    def test_worked_example(self, fixture_jet):
        _, m, exp = fixture_jet("r4_z2_worked")
        out = axial_closed_n3(m, adapted_frame(m))
        assert close_multiset(out[1], exp["axial"]["1"])
        assert close_multiset(out[2], exp["axial"]["2"])

    def test_r5_example(self, fixture_jet):
        _, m, exp = fixture_jet("r5_z2_worked")
        out = axial_closed_n3(m, adapted_frame(m))
        assert close_multiset(out[1], exp["axial"]["1"])
        for t in (math.pi / 8, 5 * math.pi / 8):
            assert any(abs(v - (1 + math.sin(2 * t) + 2 * math.cos(t) ** 2)) < 1e-12 for v in out[1])

    def test_diagonal_reduced_form(self):
        a = np.zeros((2, 3, 3))
        a[0, 0, 0] = 1.0
        a[1] = np.diag([2.5, -1.5, 1.0])
        m = MongeJet(3, 1, a)
        assert close_multiset(axial_closed_n3(m, adapted_frame(m))[1], [-1.5, 2.5])

    def test_unsupported(self):
        m = MongeJet(3, 3, np.zeros((4, 3, 3)))
        with pytest.raises(UnsupportedError):
            axial_closed_n3(m, None)


class TestEqualDiagonalCase:
    def _jet(self, a, b):
        arr = np.zeros((2, 3, 3))
        arr[0, 0, 0] = 1.0
        arr[1, :2, :2] = [[a, b], [b, a]]
        arr[1, 2, 2] = 1.0
        return MongeJet(3, 1, arr)

    def test_both_values_are_critical(self):
        m = self._jet(2.0, 0.75)
        split = formula_m3_case_split(m)
        assert split["case"] == "2" and split["discrepancy"]
        assert split["stated"] == pytest.approx([1.25])
        assert split["eigen"] == pytest.approx([1.25, 2.75])
        assert close_multiset(axial_oracle(m, [0, 1]).values, [1.25, 2.75])

    def test_report_carries_note(self):
        rep = axial_report(self._jet(2.0, 0.75))
        assert any("equal diagonal" in n for n in rep.notes)

    def test_no_note_without_mixed_term(self):
        rep = axial_report(self._jet(2.0, 0.0))
        assert not any("equal diagonal" in n for n in rep.notes)

    def test_generic_case_agrees_with_eigen(self, rng):
        for _ in range(100):
            m = random_jet(3, 1, "XZ_Z2", rng)
            split = formula_m3_case_split(m)
            assert split["case"] == "1"
            assert close_multiset(split["stated"], split["eigen"])


class TestSlices:
    def test_worked_blocks(self, fixture_jet):
        _, m, _ = fixture_jet("r4_z2_worked")
        sl = regular_slice(m)
        assert np.allclose(sl.blocks[0], [[1, 0], [0, 7]])
        assert np.allclose(sl.blocks[1], [[3, 1], [1, 1]])

    def test_zero(self):
        assert np.all(regular_slice(MongeJet(3, 2, np.zeros((3, 3, 3)))).blocks == 0)

    def test_surface_slice_is_curve(self, fixture_jet):
        _, m, _ = fixture_jet("cuspidal_edge_r4")
        assert np.array_equal(regular_slice(m).blocks[:, 0, 0], m.a[:, 0, 0])

    def test_blocks_match_parent(self, rng):
        m = random_jet(3, 2, "XZ_YZ_Z2", rng)
        assert np.array_equal(regular_slice(m).blocks, m.a[:, :2, :2])

    def test_principal_worked(self, fixture_jet):
        _, m, _ = fixture_jet("r4_z2_worked")
        sl = regular_slice(m)
        assert principal_curvatures(sl, [0, 1]) == pytest.approx([2 - R2, 2 + R2])
        assert principal_curvatures(sl, [1, 0]) == pytest.approx([1, 7])
        assert principal_curvatures(sl, [-1, 0]) == pytest.approx([-7, -1])

    def test_principal_plane_orbit(self, fixture_jet):
        _, m, exp = fixture_jet("r4_xzyz_worked")
        sp = exp["slice_principal"]
        assert principal_curvatures(regular_slice(m), sp["direction"]) == pytest.approx(sp["values"])

    def test_associated_slice_removes_mixed_terms(self, rng):
        """Primary values equal the principal curvatures of the associated slice."""
        for k, tag in [(1, "XZ_Z2"), (2, "XZ_YZ_Z2"), (1, "Z2_0"), (2, "Z2_0_0")]:
            for _ in range(50):
                m = random_jet(3, k, tag, rng)
                v1 = m.a[:, 2, 2] / np.linalg.norm(m.a[:, 2, 2])
                pc = principal_curvatures(associated_slice(m), v1)
                assert close_multiset(axial_oracle(m, v1).values, np.unique(pc.round(12)))


class TestCurveCurvature:
    def test_formulas_example(self, fixture_jet):
        f, _, exp = fixture_jet("cuspidal_edge_r4")
        assert curve_curvature(f) == pytest.approx(exp["curve_curvature"])

    def test_straight_line(self):
        f = PolyMapGerm(2, 1, ((((1, 0), 1.0),), (((1, 0), 2.0),), ()))
        assert curve_curvature(f) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("r", [0.5, 1.0, 3.0])
    def test_circle_osculation(self, r):
        # t -> (s t, s^2 t^2 / (2 r)) osculates a circle of radius r for any speed s
        s = 1.7
        f = PolyMapGerm(2, 1, ((((1, 0), s),), (((2, 0), s * s / (2 * r)),), ()))
        assert curve_curvature(f) == pytest.approx(1 / r)

    def test_singular(self):
        f = PolyMapGerm(2, 1, ((((0, 1), 1.0),), (((2, 0), 1.0),), ()))
        with pytest.raises(SingularCurveError):
            curve_curvature(f, axis=0)


class TestCountsAndAgreement:
    @pytest.mark.parametrize("nk", SUPPORTED)
    def test_closed_within_oracle(self, nk, rng):
        n, k = nk
        for tag in tags_for(n, k):
            for _ in range(30):
                m = random_jet(n, k, tag, rng)
                rep = axial_report(m)
                for e in rep.entries:
                    assert len(e.values) <= n - 1
                    if e.closed is not None:
                        assert e.agree, (tag, e)
                assert rep.total() <= n * (n - 1) and rep.total() <= len(adapted_frame(m).vectors) * (n - 1)

    def test_unbounded_both_single_value(self, rng):
        for k, tag in [(1, "XZ_0"), (1, "XZ_YZ"), (2, "XZ_0_0"), (2, "XZ_YZ_0")]:
            for _ in range(30):
                m = random_jet(3, k, tag, rng)
                for v in adapted_frame(m).vectors:
                    if boundedness_diagnostic(m, v) == Boundedness.UNBOUNDED_BOTH:
                        assert len(axial_oracle(m, v).values) == 1

    def test_orbit_stable_under_sampling(self, rng):
        for n, k in SUPPORTED:
            for tag in tags_for(n, k):
                assert classify(random_jet(n, k, tag, rng)).tag == tag
