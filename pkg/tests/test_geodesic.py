#!/usr/bin/env python3
"""等值线追踪、测地线打靶与首积分"""

import math

import numpy as np
import pytest

from calib_geo.catalog import brachistochrone_entry, conic_entry, entry_by_name
from calib_geo.errors import (
    DegenerateCurve,
    MaxStepsExceeded,
    OutsideDomain,
    SingularDensity,
    VanishingGradient,
)
from calib_geo.geodesic import (
    TraceConfig,
    first_integral_residual,
    shoot_geodesic,
    tangent_angle_at_midpoint,
    trace_level,
)
from calib_geo.geometry import Domain, Polyline, ScalarField, hausdorff_distance
from calib_geo.models import Point2

HEIGHT = ScalarField(value=lambda x, y: y, gradient=lambda x, y: (np.zeros_like(x), np.ones_like(x)), name="y")
RADIUS2 = ScalarField(value=lambda x, y: x * x + y * y, gradient=lambda x, y: (2 * x, 2 * y), name="r2")
UNIT = ScalarField(value=lambda x, y: np.ones_like(x), gradient=lambda x, y: (np.zeros_like(x), np.zeros_like(x)))
HALF_PLANE = ScalarField(value=lambda x, y: 1.0 / y, gradient=lambda x, y: (np.zeros_like(x), -1.0 / (y * y)))


def cycloid_point(t):
    return Point2.of(t - math.sin(t), math.cos(t) - 1.0)


def circle_trace(step):
    entry = conic_entry(0.0)
    cfg = TraceConfig(step=step, domain=entry.pair.domain, stop=lambda p: p.y < 0.3)
    start = Point2.of(math.cos(math.pi / 3), math.sin(math.pi / 3))
    return trace_level(entry.pair.g, start, 1, cfg)


class TestTraceLevel:
    def test_horizontal_line(self):
        poly = trace_level(HEIGHT, Point2.of(0.1, 0.5), 1, TraceConfig(step=0.1, max_steps=5))
        assert len(poly) == 6
        assert poly.x == pytest.approx(np.linspace(0.1, 0.6, 6))
        assert np.all(poly.y == 0.5)

    def test_reverse_direction(self):
        poly = trace_level(HEIGHT, Point2.of(0.1, 0.5), -1, TraceConfig(step=0.1, max_steps=5))
        assert poly.x[-1] == pytest.approx(-0.4)

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            trace_level(HEIGHT, Point2.of(0.1, 0.5), 0, TraceConfig())

    def test_stops_at_domain_boundary(self):
        cfg = TraceConfig(step=0.1, domain=Domain.box(0.0, 1.0, 0.0, 1.0))
        poly = trace_level(HEIGHT, Point2.of(0.05, 0.5), 1, cfg)
        # 整步走到 0.95 后步长减半逼近边界
        assert poly.x[9] == pytest.approx(0.95)
        assert len(poly) > 10
        assert np.all(np.diff(poly.x) > 0.0)
        assert 1.0 - 1e-6 < poly.x[-1] < 1.0

    def test_first_step_halved_near_boundary(self):
        cfg = TraceConfig(step=0.1, domain=Domain.box(0.0, 1.0, 0.0, 1.0))
        poly = trace_level(HEIGHT, Point2.of(0.97, 0.5), 1, cfg)
        assert len(poly) >= 2
        assert poly.x[1] == pytest.approx(0.995)
        assert np.all(poly.x < 1.0)

    def test_start_on_boundary_floor(self):
        cfg = TraceConfig(step=0.1, domain=Domain.box(0.0, 1.0, 0.0, 1.0))
        with pytest.raises(DegenerateCurve):
            trace_level(HEIGHT, Point2.of(1.0 - 1e-9, 0.5), 1, cfg)

    def test_quarter_circle(self):
        entry = conic_entry(0.0)
        start = Point2.of(math.cos(math.pi / 3), math.sin(math.pi / 3))
        poly = trace_level(entry.pair.g, start, 1, TraceConfig(step=0.01, max_steps=20, domain=entry.pair.domain))
        assert np.max(np.abs(poly.x ** 2 + poly.y ** 2 - 1.0)) <= 1e-8

    def test_corrector_tolerance(self):
        poly = trace_level(RADIUS2, Point2.of(1.0, 0.0), 1, TraceConfig(step=0.05, max_steps=50))
        assert np.max(np.abs(poly.x ** 2 + poly.y ** 2 - 1.0)) <= 1e-12
        # +1 方向为顺时针
        assert poly.y[1] < 0.0

    def test_cycloid_both_directions(self):
        entry = brachistochrone_entry()
        start = cycloid_point(1.0)
        forward = trace_level(entry.pair.g, start, 1,
                              TraceConfig(step=0.01, domain=entry.pair.domain, stop=lambda p: p.x > 1.9))
        backward = trace_level(entry.pair.g, start, -1,
                               TraceConfig(step=0.01, max_steps=1000, domain=entry.pair.domain,
                                           stop=lambda p: p.y > -0.0447))
        for poly in (forward, backward):
            t = np.arccos(1.0 + poly.y)
            assert np.max(np.abs(poly.x - (t - np.sin(t)))) <= 1e-9
        assert forward.x[-1] > 1.9
        assert backward.y[-1] > -0.0447

    def test_chord_error_is_second_order(self):
        gaps = []
        for step in (0.02, 0.01, 0.005):
            poly = circle_trace(step)
            theta = np.arctan2(poly.y, poly.x)
            gaps.append(abs(theta[-1] - theta[0]) - poly.length())
        assert all(gap > 0 for gap in gaps)
        assert 3.0 <= gaps[0] / gaps[1] <= 5.0
        assert 3.0 <= gaps[1] / gaps[2] <= 5.0

    def test_halving_step_halves_hausdorff_distance(self):
        distances = []
        for step in (0.02, 0.01):
            poly = circle_trace(step)
            theta = np.arctan2(poly.y, poly.x)
            dense = np.linspace(theta[-1], theta[0], 20001)
            reference = Polyline.from_xy(np.cos(dense), np.sin(dense))
            distances.append(hausdorff_distance(poly, reference))
        assert distances[0] == pytest.approx(0.01, rel=0.05)
        assert 1.8 <= distances[0] / distances[1] <= 2.2

    def test_start_outside(self):
        with pytest.raises(OutsideDomain):
            trace_level(HEIGHT, Point2.of(5.0, 5.0), 1, TraceConfig(domain=Domain.box(0.0, 1.0, 0.0, 1.0)))

    def test_stop_never_fires(self):
        with pytest.raises(MaxStepsExceeded):
            trace_level(HEIGHT, Point2.of(0.0, 0.0), 1, TraceConfig(max_steps=10, stop=lambda p: False))

    def test_critical_point(self):
        with pytest.raises(VanishingGradient):
            trace_level(RADIUS2, Point2.of(0.0, 0.0), 1, TraceConfig())


class TestShooting:
    def test_straight_line(self):
        shot = shoot_geodesic(UNIT, Point2.of(0.0, 0.0), 0.3, 0.01, 100)
        assert shot.status == "complete"
        assert shot.steps_taken == 100
        assert shot.curve.end.x == pytest.approx(math.cos(0.3), abs=1e-12)
        assert shot.curve.end.y == pytest.approx(math.sin(0.3), abs=1e-12)

    def test_hyperbolic_semicircle(self):
        shot = shoot_geodesic(HALF_PLANE, Point2.of(0.0, 1.0), 0.0, 1e-3, 1000)
        curve = shot.curve
        assert np.max(np.abs(curve.x ** 2 + curve.y ** 2 - 1.0)) <= 1e-6
        assert curve.end.x == pytest.approx(math.cos(math.pi / 2 - 1.0), abs=1e-6)

    def test_cycloid(self):
        entry = brachistochrone_entry()
        shot = shoot_geodesic(entry.pair.rho, cycloid_point(math.pi / 2), -math.pi / 4, 1e-3, 500,
                              domain=entry.pair.domain)
        curve = shot.curve
        gx, gy = entry.pair.g.gradient_xy(curve.x, curve.y)
        offset = np.abs(entry.pair.g(curve.x, curve.y)) / np.hypot(gx, gy)
        assert np.max(offset) <= 1e-5

    @pytest.mark.parametrize("name", ["conic-eps-0", "conic-parabola", "brachistochrone"])
    def test_shot_follows_level_set(self, name):
        entry = entry_by_name(name)
        start, angle = tangent_angle_at_midpoint(entry.minimizer)
        step = 1e-3
        shot = shoot_geodesic(entry.pair.rho, start, angle, step, 300, domain=entry.pair.domain)
        curve = shot.curve
        g0 = entry.pair.g.at(start)
        gx, gy = entry.pair.g.gradient_xy(curve.x, curve.y)
        offset = np.abs(entry.pair.g(curve.x, curve.y) - g0) / np.hypot(gx, gy)
        assert np.max(offset) <= 10 * step

    def test_singular_density_without_domain(self):
        with pytest.raises(SingularDensity):
            shoot_geodesic(HALF_PLANE, Point2.of(0.0, 0.05), -math.pi / 2, 0.01, 100)

    def test_domain_exit(self):
        shot = shoot_geodesic(HALF_PLANE, Point2.of(0.0, 0.05), -math.pi / 2, 0.01, 100,
                              domain=Domain.box(-1.0, 1.0, 0.0, 2.0))
        assert shot.status == "domain_exit"
        assert shot.steps_taken < 100

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            shoot_geodesic(UNIT, Point2.of(0.0, 0.0), 0.0, 0.0, 10)
        with pytest.raises(ValueError):
            shoot_geodesic(UNIT, Point2.of(0.0, 0.0), 0.0, 0.1, 0)

    def test_midpoint_tangent_of_segment(self):
        point, angle = tangent_angle_at_midpoint(Polyline.from_xy([0.0, 1.0], [0.0, 1.0]))
        assert point.as_tuple() == (0.5, 0.5)
        assert angle == pytest.approx(math.pi / 4)


class TestFirstIntegral:
    @staticmethod
    def speed(y):
        return np.sqrt(-y)

    def test_vertical_segment(self):
        segment = Polyline.from_xy([0.0, 0.0], [-1.0, -0.5])
        assert first_integral_residual(self.speed, segment, 0.0) == 0.0

    def test_cycloid_constant(self):
        cycloid = brachistochrone_entry().minimizer
        assert first_integral_residual(self.speed, cycloid, 1.0 / math.sqrt(2.0)) <= 1e-6

    def test_horizontal_segment_deviation(self):
        segment = Polyline.from_xy([0.0, 1.0], [-1.0, -1.0])
        residual = first_integral_residual(self.speed, segment, 1.0 / math.sqrt(2.0))
        assert residual == pytest.approx(0.2928932188, abs=1e-10)

    def test_invalid_speed(self):
        segment = Polyline.from_xy([0.0, 1.0], [0.5, 0.5])
        with pytest.raises(SingularDensity):
            first_integral_residual(self.speed, segment, 0.5)
