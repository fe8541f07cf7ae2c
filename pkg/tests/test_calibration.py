#!/usr/bin/env python3
"""标定对、假设检查、竞争曲线与验证证书"""

import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from calib_geo.calibration import (
    CalibrationPair,
    calibrated_bound,
    check_density,
    check_orthogonality,
    competitor_batch,
    generate_competitor,
    sample_interior,
    verify_minimizer,
)
from calib_geo.catalog import hyperbolic_semicircle_pair, semicircle_arc
from calib_geo.errors import (
    CannotFitInDomain,
    EmptyDomain,
    EndpointMismatch,
    NotOnLevelCurve,
    OutsideDomain,
    VanishingGradient,
)
from calib_geo.geometry import Domain, ParametricCurve, Polyline, ScalarField, weighted_length
from calib_geo.models import Point2, Tolerances


def horizontal(y=0.5, a=0.1, b=0.9):
    return ParametricCurve(map=lambda t: (t, np.full_like(t, y)), t0=a, t1=b)


def semicircle_setup():
    """过 (0,1) 与 (1,1) 的半圆, 圆心 (0.5, 0)"""
    x0, radius = 0.5, math.sqrt(1.25)
    pair = hyperbolic_semicircle_pair(x0)
    arc = semicircle_arc(x0, radius, math.atan2(1.0, -0.5), math.atan2(1.0, 0.5))
    return pair, arc


class TestSampling:
    def test_deterministic_and_inside(self):
        domain = Domain.annular_sector(0.5, 2.0)
        x1, y1 = sample_interior(domain, 200, seed=7)
        x2, y2 = sample_interior(domain, 200, seed=7)
        assert np.array_equal(x1, x2) and np.array_equal(y1, y2)
        assert x1.shape == (200,)
        assert np.all(domain.inside(x1, y1))

    def test_seed_changes_points(self):
        domain = Domain.box(0.0, 1.0, 0.0, 1.0)
        assert not np.array_equal(sample_interior(domain, 50, 1)[0], sample_interior(domain, 50, 2)[0])

    def test_empty_domain(self):
        domain = Domain(contains=lambda x, y: np.zeros_like(x, dtype=bool), bbox=(0.0, 1.0, 0.0, 1.0))
        with pytest.raises(EmptyDomain):
            sample_interior(domain, 10, 0)


class TestHypothesisChecks:
    def test_euclidean_pair(self, euclidean_pair):
        assert check_orthogonality(euclidean_pair, 100, 0) == 0.0
        assert check_density(euclidean_pair, 100, 0) == 0.0

    def test_semicircle_pair(self):
        pair, _ = semicircle_setup()
        assert check_orthogonality(pair, 500, 42) <= 1e-9
        assert check_density(pair, 500, 42) <= 1e-8

    def test_parallel_gradients(self, euclidean_pair):
        parallel = CalibrationPair(
            f=euclidean_pair.f,
            g=euclidean_pair.f,
            domain=euclidean_pair.domain,
            rho=euclidean_pair.rho,
        )
        assert check_orthogonality(parallel, 100, 0) == pytest.approx(1.0)

    def test_vanishing_gradient(self, euclidean_pair):
        flat = CalibrationPair(
            f=euclidean_pair.f,
            g=ScalarField(value=lambda x, y: 1.0, gradient=lambda x, y: (0.0, 0.0)),
            domain=euclidean_pair.domain,
            rho=euclidean_pair.rho,
        )
        with pytest.raises(VanishingGradient):
            check_orthogonality(flat, 10, 0)

    def test_bound_is_symmetric(self, euclidean_pair):
        p1, p2 = Point2.of(0.1, 0.2), Point2.of(0.7, 0.9)
        assert calibrated_bound(euclidean_pair, p1, p2) == pytest.approx(0.6)
        assert calibrated_bound(euclidean_pair, p2, p1) == calibrated_bound(euclidean_pair, p1, p2)

    def test_scaled_pair(self):
        pair, arc = semicircle_setup()
        scaled = pair.scaled(3.0)
        p1, p2 = arc.start, arc.end
        assert calibrated_bound(scaled, p1, p2) == pytest.approx(3.0 * calibrated_bound(pair, p1, p2), rel=1e-12)
        assert weighted_length(arc, scaled.rho) == pytest.approx(3.0 * weighted_length(arc, pair.rho), rel=1e-9)
        assert check_density(scaled, 200, 1) <= 1e-8
        with pytest.raises(ValueError):
            pair.scaled(0.0)


class TestCompetitors:
    def test_endpoints_exact_and_inside(self):
        domain = Domain.box(0.0, 1.0, 0.0, 1.0)
        p1, p2 = Point2.of(0.1, 0.5), Point2.of(0.9, 0.5)
        curve = generate_competitor(p1, p2, domain, seed=3)
        assert curve.start == p1 and curve.end == p2
        assert len(curve) == 129
        assert np.all(domain.inside(curve.x, curve.y))

    def test_seeded(self):
        domain = Domain.box(0.0, 1.0, 0.0, 1.0)
        p1, p2 = Point2.of(0.1, 0.5), Point2.of(0.9, 0.5)
        a = competitor_batch(p1, p2, domain, 3, seed=10)
        b = competitor_batch(p1, p2, domain, 3, seed=10)
        assert all(np.array_equal(u.points, v.points) for u, v in zip(a, b))
        assert np.array_equal(a[1].points, generate_competitor(p1, p2, domain, seed=11).points)
        assert not np.array_equal(a[0].points, a[1].points)

    def test_cannot_fit(self):
        domain = Domain(
            contains=lambda x, y: np.abs(x - 0.5) > 0.1,
            bbox=(0.0, 1.0, -1.0, 1.0),
        )
        with pytest.raises(CannotFitInDomain):
            generate_competitor(Point2.of(0.1, 0.0), Point2.of(0.9, 0.0), domain, seed=0)

    @given(st.integers(min_value=0, max_value=10_000))
    def test_calibration_inequality_on_semicircle(self, seed):
        pair, arc = semicircle_setup()
        bound = calibrated_bound(pair, arc.start, arc.end)
        curve = generate_competitor(arc.start, arc.end, pair.domain, seed)
        assert weighted_length(curve, pair.rho) >= bound * (1.0 - 1e-7)


class TestVerifyMinimizer:
    def test_euclidean_passes(self, euclidean_pair):
        minimizer = horizontal()
        competitors = competitor_batch(minimizer.start, minimizer.end, euclidean_pair.domain, 20, seed=42)
        report = verify_minimizer(euclidean_pair, minimizer, competitors, entry_name="euclid", seed=42)
        assert report.passed
        assert report.bound == pytest.approx(0.8)
        assert report.minimizer_length == pytest.approx(0.8, rel=1e-9)
        assert len(report.competitor_margins) == 20
        assert min(report.competitor_margins) > 0.0
        assert report.domain_standoff == euclidean_pair.domain.margin

    def test_semicircle_beats_straight_segment(self):
        pair, arc = semicircle_setup()
        straight = Polyline.from_xy([arc.start.x, arc.end.x], [arc.start.y, arc.end.y])
        report = verify_minimizer(pair, arc, [straight], seed=1)
        assert report.passed
        assert report.bound == pytest.approx(math.acosh(1.5), abs=1e-10)
        assert report.competitor_margins[0] == pytest.approx(1.0 - math.acosh(1.5), abs=1e-8)

    def test_wrong_density_fails(self, euclidean_pair):
        wrong = CalibrationPair(
            f=euclidean_pair.f,
            g=euclidean_pair.g,
            domain=euclidean_pair.domain,
            rho=ScalarField(value=lambda x, y: 2.0),
        )
        report = verify_minimizer(wrong, horizontal(), [])
        assert not report.passed
        assert report.density_max_rel_error == pytest.approx(0.5)

    def test_endpoint_mismatch(self, euclidean_pair):
        other = Polyline.from_xy([0.1, 0.5, 0.8], [0.5, 0.6, 0.5])
        with pytest.raises(EndpointMismatch):
            verify_minimizer(euclidean_pair, horizontal(), [other])

    def test_not_on_level_curve(self, euclidean_pair):
        diagonal = ParametricCurve(map=lambda t: (t, t), t0=0.2, t1=0.8)
        with pytest.raises(NotOnLevelCurve):
            verify_minimizer(euclidean_pair, diagonal, [])

    def test_outside_domain(self, euclidean_pair):
        escaping = Polyline.from_xy([0.1, 0.5, 0.9], [0.5, 1.5, 0.5])
        with pytest.raises(OutsideDomain):
            verify_minimizer(euclidean_pair, horizontal(), [escaping])

    def test_parallel_matches_serial(self, euclidean_pair):
        minimizer = horizontal()
        competitors = competitor_batch(minimizer.start, minimizer.end, euclidean_pair.domain, 12, seed=5)
        serial = verify_minimizer(euclidean_pair, minimizer, competitors, seed=5, max_workers=1)
        pooled = verify_minimizer(euclidean_pair, minimizer, competitors, seed=5, max_workers=4)
        assert serial.to_json() == pooled.to_json()

    def test_report_json_is_sorted(self, euclidean_pair):
        report = verify_minimizer(euclidean_pair, horizontal(), [], tolerances=Tolerances(tol_len=1e-3))
        payload = json.loads(report.to_json())
        assert list(payload) == sorted(payload)
        assert payload["passed"] is True
        assert payload["n_competitors"] == 0
