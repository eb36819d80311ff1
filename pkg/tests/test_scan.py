"""Exclusion-curve construction, scaling structure and curve/overlay CSV."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spontrad.constants import CouplingMode
from spontrad.errors import SpectrumFormatError, ValidationError
from spontrad.scan import (CURVE_CSV_HEADER, ExclusionCurve, OVERLAY_CSV_HEADER,
                           ReferencePoint, builtin_reference_points, load_curves,
                           load_overlay_boundary, log_grid, save_curves, scan)

MASS = CouplingMode.MASS_PROPORTIONAL
ELECTRON = CouplingMode.NON_MASS_PROPORTIONAL


class TestLogGrid:
    def test_endpoints_exact(self):
        grid = log_grid(1e-9, 1e-3, 200)
        assert grid[0] == 1e-9
        assert grid[-1] == 1e-3
        assert len(grid) == 200

    def test_log_spacing_uniform(self):
        grid = log_grid(1e-8, 1e-4, 50)
        steps = [math.log(b) - math.log(a) for a, b in zip(grid, grid[1:])]
        assert max(steps) - min(steps) < 1e-12

    def test_single_point(self):
        assert log_grid(1e-7, 1e-7, 1) == [1e-7]

    def test_validation(self):
        with pytest.raises(ValidationError):
            log_grid(0.0, 1e-3, 5)
        with pytest.raises(ValidationError):
            log_grid(1e-3, 1e-9, 5)
        with pytest.raises(ValidationError):
            log_grid(1e-9, 1e-3, 0)
        with pytest.raises(ValidationError):
            log_grid(1e-8, 1e-7, 1)


class TestScan:
    def test_power_law_values(self):
        curve = scan(8.1e-12, 1e-7, [1e-7], MASS, "chi2", 0.95)
        assert curve.points == ((1e-7, 8.1e-12),)

    def test_two_decade_shift(self):
        curve = scan(8.1e-12, 1e-7, [1e-6], MASS, "chi2", 0.95)
        assert curve.points[0][1] == pytest.approx(8.1e-10, rel=1e-12)
        curve = scan(2.0e-18, 1e-7, [1e-8], ELECTRON, "bayes", 0.95)
        assert curve.points[0][1] == pytest.approx(2.0e-20, rel=1e-12)

    def test_single_point_grid_is_identity(self):
        # r/r_ref evaluates to exactly one, so the reference value passes
        # through bit-for-bit.
        lam_ref = 7.006202483028229e-12
        curve = scan(lam_ref, 1e-7, [1e-7], MASS, "bayes", 0.95)
        assert curve.points[0] == (1e-7, lam_ref)

    def test_log_log_slope_is_two(self):
        curve = scan(8.1e-12, 1e-7, log_grid(1e-9, 1e-3, 200), MASS, "chi2", 0.95)
        pts = curve.points
        for (r1, l1), (r2, l2) in zip(pts, pts[1:]):
            slope = (math.log(l2) - math.log(l1)) / (math.log(r2) - math.log(r1))
            assert slope == pytest.approx(2.0, abs=1e-12)

    def test_coupling_curves_parallel_with_mass_offset(self):
        grid = log_grid(1e-9, 1e-3, 40)
        ratio = (938.27208816 / 0.51099895) ** 2
        lam_p = 8.097029465934479e-12
        lam_e = lam_p / ratio
        curve_p = scan(lam_p, 1e-7, grid, MASS, "chi2", 0.95)
        curve_e = scan(lam_e, 1e-7, grid, ELECTRON, "chi2", 0.95)
        expected_offset = math.log(ratio)
        for (_, lp), (_, le) in zip(curve_p.points, curve_e.points):
            assert math.log(lp) - math.log(le) == pytest.approx(expected_offset,
                                                                abs=1e-9)

    @settings(max_examples=60, deadline=None)
    @given(lam_ref=st.floats(min_value=1e-20, max_value=1e-6, allow_nan=False),
           r_ref=st.floats(min_value=1e-9, max_value=1e-3, allow_nan=False))
    def test_slope_property(self, lam_ref, r_ref):
        grid = log_grid(1e-9, 1e-3, 17)
        curve = scan(lam_ref, r_ref, grid, MASS, "bayes", 0.9)
        pts = curve.points
        for (r1, l1), (r2, l2) in zip(pts, pts[1:]):
            slope = (math.log(l2) - math.log(l1)) / (math.log(r2) - math.log(r1))
            assert slope == pytest.approx(2.0, abs=1e-12)

    def test_grid_validation(self):
        with pytest.raises(ValidationError):
            scan(1e-12, 1e-7, [], MASS, "chi2", 0.95)
        with pytest.raises(ValidationError):
            scan(1e-12, 1e-7, [1e-7, 1e-8], MASS, "chi2", 0.95)
        with pytest.raises(ValidationError):
            scan(1e-12, 1e-7, [-1e-7], MASS, "chi2", 0.95)
        with pytest.raises(ValidationError):
            scan(-1e-12, 1e-7, [1e-7], MASS, "chi2", 0.95)


class TestExclusionCurve:
    def test_invariants_enforced(self):
        with pytest.raises(ValidationError):
            ExclusionCurve(coupling=MASS, points=((1e-7, 1e-12), (1e-8, 1e-14)),
                           method="chi2", confidence=0.95)
        with pytest.raises(ValidationError):
            ExclusionCurve(coupling=MASS, points=((1e-7, -1e-12),),
                           method="chi2", confidence=0.95)
        with pytest.raises(ValidationError):
            ExclusionCurve(coupling=MASS, points=((1e-7, 1e-12),),
                           method="mcmc", confidence=0.95)
        with pytest.raises(ValidationError):
            ExclusionCurve(coupling=MASS, points=(), method="chi2", confidence=0.95)


class TestReferencePoints:
    def test_builtin_families(self):
        points = builtin_reference_points()
        labels = {p.label for p in points}
        assert labels == {"GRW", "Adler"}
        assert ReferencePoint("GRW", 1e-16, 1e-7) in points
        assert ReferencePoint("Adler", 1e-8, 1e-7) in points
        adler = sorted(p.lam for p in points if p.label == "Adler")
        assert adler == [1e-10, 1e-8, 1e-6]

    def test_positive_required(self):
        with pytest.raises(ValidationError):
            ReferencePoint("x", 0.0, 1e-7)
        with pytest.raises(ValidationError):
            ReferencePoint("x", 1e-16, -1e-7)


class TestCurveCsv:
    def test_round_trip(self, tmp_path):
        curves = [
            scan(8.1e-12, 1e-7, log_grid(1e-9, 1e-3, 25), MASS, "chi2", 0.95),
            scan(2.4e-18, 1e-7, log_grid(1e-9, 1e-3, 25), ELECTRON, "chi2", 0.95),
        ]
        path = tmp_path / "curves.csv"
        save_curves(curves, path)
        loaded = load_curves(path)
        assert loaded == curves

    def test_header_written(self, tmp_path):
        path = tmp_path / "curves.csv"
        save_curves([scan(1e-12, 1e-7, [1e-7], MASS, "bayes", 0.95)], path)
        assert path.read_text().splitlines()[0] == CURVE_CSV_HEADER

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "curves.csv"
        path.write_text("r,l\n1e-7,1e-12\n")
        with pytest.raises(SpectrumFormatError):
            load_curves(path)


class TestOverlay:
    def test_two_point_polyline(self, tmp_path):
        path = tmp_path / "overlay.csv"
        path.write_text(f"{OVERLAY_CSV_HEADER}\n1e-7,1e-9\n1e-6,1e-10\n")
        assert load_overlay_boundary(path) == [(1e-7, 1e-9), (1e-6, 1e-10)]

    def test_unsorted_rejected(self, tmp_path):
        path = tmp_path / "overlay.csv"
        path.write_text(f"{OVERLAY_CSV_HEADER}\n1e-6,1e-10\n1e-7,1e-9\n")
        with pytest.raises(ValidationError):
            load_overlay_boundary(path)

    def test_empty_file_is_empty_overlay(self, tmp_path):
        path = tmp_path / "overlay.csv"
        path.write_text("")
        assert load_overlay_boundary(path) == []

    def test_header_only_is_empty_overlay(self, tmp_path):
        path = tmp_path / "overlay.csv"
        path.write_text(f"{OVERLAY_CSV_HEADER}\n")
        assert load_overlay_boundary(path) == []

    def test_nonpositive_rejected(self, tmp_path):
        path = tmp_path / "overlay.csv"
        path.write_text(f"{OVERLAY_CSV_HEADER}\n1e-7,0.0\n")
        with pytest.raises(ValidationError):
            load_overlay_boundary(path)
