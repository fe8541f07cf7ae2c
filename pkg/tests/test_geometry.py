#!/usr/bin/env python3
"""平面几何: 场、区域、曲线与加权线积分"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from calib_geo.errors import NonFiniteValue, SingularDensity
from calib_geo.geometry import (
    Domain,
    ParametricCurve,
    Polyline,
    ScalarField,
    adaptive_gauss,
    exact_increment,
    grad,
    hausdorff_distance,
    read_polyline_csv,
    resample_arclength,
    weighted_length,
    write_polyline_csv,
)
from calib_geo.models import Point2

from .conftest import hyperbolic_distance


def quarter_circle(a=math.pi / 6, b=math.pi / 3):
    return ParametricCurve(map=lambda t: (np.cos(t), np.sin(t)), t0=a, t1=b)


class TestModels:
    def test_point_rejects_non_finite(self):
        with pytest.raises(ValidationError):
            Point2(x=float("nan"), y=0.0)
        with pytest.raises(ValidationError):
            Point2(x=0.0, y=float("inf"))

    def test_point_distance(self):
        assert Point2.of(0, 0).distance(Point2.of(3, 4)) == 5.0


class TestDomain:
    def test_default_margin_scales_with_diagonal(self):
        domain = Domain.box(0.0, 3.0, 0.0, 4.0)
        assert domain.margin == pytest.approx(5e-6)
        assert domain.diagonal == pytest.approx(5.0)

    def test_empty_bbox_rejected(self):
        with pytest.raises(ValidationError):
            Domain.box(1.0, 1.0, 0.0, 1.0)

    def test_inside_respects_standoff(self):
        domain = Domain.box(0.0, 1.0, 0.0, 1.0)
        x = np.array([0.5, 0.05, 1e-9, 0.5])
        y = np.array([0.5, 0.5, 0.5, 1.5])
        assert domain.inside(x, y).tolist() == [True, True, False, False]
        assert domain.inside(x, y, standoff=0.1).tolist() == [True, False, False, False]

    def test_annular_sector_excludes_hole_and_cut(self):
        domain = Domain.annular_sector(0.5, 2.0)
        assert domain.contains_point(Point2.of(1.0, 0.0))
        assert not domain.contains_point(Point2.of(0.1, 0.1))
        assert not domain.contains_point(Point2.of(-1.0, 0.0))

    def test_restrict_y(self):
        domain = Domain.box(0.0, 1.0, 0.0, 2.0).restrict_y(0.5, 1.0)
        assert domain.bbox == (0.0, 1.0, 0.5, 1.0)
        assert not domain.contains_point(Point2.of(0.5, 1.5), standoff=0.0)


class TestScalarField:
    def test_fd_gradient_matches_analytic(self):
        field = ScalarField(value=lambda x, y: x * x * y)
        v = grad(field, Point2.of(1.5, -0.5))
        assert v.dx == pytest.approx(-1.5, abs=1e-7)
        assert v.dy == pytest.approx(2.25, abs=1e-7)

    def test_analytic_gradient_preferred(self):
        field = ScalarField(value=lambda x, y: x + y, gradient=lambda x, y: (np.full_like(x, 7.0), np.zeros_like(y)))
        assert grad(field, Point2.of(0.0, 0.0)).dx == 7.0

    def test_constant_field_broadcasts(self):
        field = ScalarField(value=lambda x, y: 2.0)
        assert field(np.zeros(3), np.zeros(3)).shape == (3,)

    def test_at_rejects_non_finite(self):
        field = ScalarField(value=lambda x, y: np.log(x), name="log")
        with pytest.raises(NonFiniteValue):
            field.at(Point2.of(-1.0, 0.0))


class TestCurves:
    def test_polyline_needs_two_points(self):
        with pytest.raises(ValidationError):
            Polyline(points=[[0.0, 0.0]])

    def test_polyline_rejects_repeated_vertex(self):
        with pytest.raises(ValidationError):
            Polyline(points=[[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])

    def test_parametric_rejects_empty_interval(self):
        with pytest.raises(ValidationError):
            ParametricCurve(map=lambda t: (t, t), t0=1.0, t1=1.0)

    def test_resample_keeps_endpoints(self):
        curve = quarter_circle()
        poly = resample_arclength(curve, 33)
        assert len(poly) == 33
        assert poly.start.distance(curve.start) < 1e-15
        assert poly.end.distance(curve.end) < 1e-15
        seg = np.hypot(*np.diff(poly.points, axis=0).T)
        assert np.max(seg) / np.min(seg) < 1.01

    def test_resample_segment_midpoint(self):
        poly = resample_arclength(Polyline.from_xy([0.0, 2.0], [0.0, 2.0]), 3)
        assert poly.points[1] == pytest.approx([1.0, 1.0], abs=1e-15)

    def test_resample_cycloid_even_gaps(self):
        cycloid = ParametricCurve(map=lambda t: (t - np.sin(t), np.cos(t) - 1.0), t0=0.1, t1=math.pi - 0.1)
        poly = resample_arclength(cycloid, 101)
        seg = np.hypot(*np.diff(poly.points, axis=0).T)
        assert len(poly) == 101
        assert (np.max(seg) - np.min(seg)) / np.mean(seg) <= 0.01

    def test_csv_round_trip(self, tmp_path):
        poly = Polyline.from_xy([0.1, 0.2, 1.0 / 3.0], [math.pi, -1e-300, 2.5])
        path = tmp_path / "curve.csv"
        write_polyline_csv(poly, path)
        assert path.read_text().splitlines()[0] == "x,y"
        assert np.array_equal(read_polyline_csv(path).points, poly.points)

    def test_csv_header_checked(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n0,0\n1,1\n")
        with pytest.raises(ValueError):
            read_polyline_csv(path)

    def test_hausdorff_of_shifted_polyline(self):
        a = Polyline.from_xy([0.0, 1.0, 2.0], [0.0, 0.0, 0.0])
        b = Polyline.from_xy([0.0, 1.0, 2.0], [0.25, 0.25, 0.25])
        assert hausdorff_distance(a, b) == pytest.approx(0.25)


class TestWeightedLength:
    def test_adaptive_gauss_sine(self):
        assert adaptive_gauss(np.sin, 0.0, math.pi, 1e-12) == pytest.approx(2.0, abs=1e-12)

    def test_unit_density_is_euclidean_length(self):
        one = ScalarField(value=lambda x, y: 1.0)
        poly = Polyline.from_xy([0.0, 3.0, 3.0], [0.0, 0.0, 4.0])
        assert weighted_length(poly, one) == pytest.approx(7.0, rel=1e-12)
        assert weighted_length(quarter_circle(0.0, math.pi / 2), one) == pytest.approx(math.pi / 2, rel=1e-9)

    def test_hyperbolic_arc(self, hyperbolic_rho):
        a, b = math.pi / 6, math.pi / 3
        expected = hyperbolic_distance((math.cos(a), math.sin(a)), (math.cos(b), math.sin(b)))
        assert expected == pytest.approx(math.log(1.0 + 2.0 / math.sqrt(3.0)), rel=1e-12)
        assert weighted_length(quarter_circle(a, b), hyperbolic_rho) == pytest.approx(expected, abs=1e-8)

    def test_straight_segment_is_longer_than_hyperbolic_distance(self, hyperbolic_rho):
        segment = Polyline.from_xy([0.0, 1.0], [1.0, 1.0])
        assert weighted_length(segment, hyperbolic_rho) == pytest.approx(1.0, rel=1e-12)
        assert hyperbolic_distance((0.0, 1.0), (1.0, 1.0)) == pytest.approx(0.9624236501, abs=1e-10)

    def test_orientation_does_not_matter(self, hyperbolic_rho):
        forward = quarter_circle(0.3, 1.2)
        backward = ParametricCurve(map=forward.map, t0=1.2, t1=0.3)
        assert weighted_length(backward, hyperbolic_rho) == pytest.approx(
            weighted_length(forward, hyperbolic_rho), rel=1e-12
        )

    def test_singular_density(self):
        rho = ScalarField(value=lambda x, y: y, name="y")
        with pytest.raises(SingularDensity):
            weighted_length(Polyline.from_xy([0.0, 0.0], [-1.0, 1.0]), rho)

    def test_rel_tol_range(self):
        one = ScalarField(value=lambda x, y: 1.0)
        with pytest.raises(ValueError):
            weighted_length(Polyline.from_xy([0.0, 1.0], [0.0, 0.0]), one, rel_tol=0.5)

    @given(
        st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5),
        st.floats(0.1, 10.0),
    )
    def test_constant_density_scales_chord(self, x0, y0, x1, y1, c):
        if math.hypot(x1 - x0, y1 - y0) < 1e-6:
            return
        rho = ScalarField(value=lambda x, y: c)
        poly = Polyline.from_xy([x0, x1], [y0, y1])
        assert weighted_length(poly, rho) == pytest.approx(c * math.hypot(x1 - x0, y1 - y0), rel=1e-12)

    def test_exact_increment_is_path_independent(self):
        f = ScalarField(value=lambda x, y: x * x + y)
        straight = Polyline.from_xy([0.0, 1.0], [0.0, 1.0])
        bent = Polyline.from_xy([0.0, 1.0, 1.0], [0.0, 0.0, 1.0])
        assert exact_increment(f, straight) == pytest.approx(2.0)
        assert exact_increment(f, bent) == pytest.approx(2.0)
