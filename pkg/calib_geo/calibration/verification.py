#!/usr/bin/env python3
"""
标定验证
正交性、密度、标定下界, 以及对竞争曲线的加权长度不等式
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from calib_geo.calibration.pair import CalibrationPair, sample_interior
from calib_geo.errors import (
    EndpointMismatch,
    NotOnLevelCurve,
    OutsideDomain,
    SingularDensity,
    VanishingGradient,
)
from calib_geo.geometry.curves import Curve, sample_points
from calib_geo.geometry.quadrature import weighted_length
from calib_geo.models.models import Point2, Tolerances, VerificationReport

logger = logging.getLogger(__name__)

ENDPOINT_TOL = 1e-9
GRADIENT_FLOOR = 1e-12
LEVEL_CHECK_POINTS = 1025


def check_orthogonality(pair: CalibrationPair, n_samples: int, seed: int) -> float:
    """采样点上 |∇f·∇g|/(‖∇f‖‖∇g‖) 的最大值"""
    x, y = sample_interior(pair.domain, n_samples, seed)
    fx, fy = pair.f.gradient_xy(x, y)
    gx, gy = pair.g.gradient_xy(x, y)
    nf = np.hypot(fx, fy)
    ng = np.hypot(gx, gy)
    small = (nf < GRADIENT_FLOOR) | (ng < GRADIENT_FLOOR)
    if np.any(small):
        idx = int(np.flatnonzero(small)[0])
        raise VanishingGradient(f"梯度在 ({x[idx]:.6g}, {y[idx]:.6g}) 处消失")
    return float(np.max(np.abs(fx * gx + fy * gy) / (nf * ng)))


def check_density(pair: CalibrationPair, n_samples: int, seed: int) -> float:
    """采样点上 |‖∇f‖ - ρ|/ρ 的最大值"""
    x, y = sample_interior(pair.domain, n_samples, seed)
    rho = pair.rho(x, y)
    bad = ~np.isfinite(rho) | (rho <= 0.0)
    if np.any(bad):
        idx = int(np.flatnonzero(bad)[0])
        raise SingularDensity(f"密度在 ({x[idx]:.6g}, {y[idx]:.6g}) 处取值 {rho[idx]!r}")
    fx, fy = pair.f.gradient_xy(x, y)
    return float(np.max(np.abs(np.hypot(fx, fy) - rho) / rho))


def calibrated_bound(pair: CalibrationPair, p1: Point2, p2: Point2) -> float:
    """|f(p2) - f(p1)|: 任意连接曲线加权长度的下界 (方向无关)"""
    return abs(pair.f.at(p2) - pair.f.at(p1))


def _curve_lengths(curves: Sequence[Curve], pair: CalibrationPair, rel_tol: float,
                   max_workers: Optional[int]) -> List[float]:
    def measure(curve: Curve) -> float:
        return weighted_length(curve, pair.rho, rel_tol)

    if max_workers == 1 or len(curves) < 2:
        return [measure(c) for c in curves]
    # map 保持输入顺序
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(measure, curves))


def _check_inside(pair: CalibrationPair, curve: Curve, label: str) -> None:
    x, y = sample_points(curve)
    if not np.all(pair.domain.inside(x, y)):
        raise OutsideDomain(f"{label} 离开区域 (或距边界小于 {pair.domain.margin:.3g})")


def verify_minimizer(pair: CalibrationPair, minimizer: Curve, competitors: Sequence[Curve],
                     tolerances: Optional[Tolerances] = None, *, entry_name: str = "",
                     seed: int = 0, n_samples: int = 500,
                     max_workers: Optional[int] = None) -> VerificationReport:
    """按标定定理的假设与结论生成验证证书"""
    tol = tolerances or Tolerances()
    start, end = minimizer.start, minimizer.end

    for index, competitor in enumerate(competitors):
        gap = max(start.distance(competitor.start), end.distance(competitor.end))
        if gap > ENDPOINT_TOL:
            raise EndpointMismatch(f"竞争曲线 {index} 的端点偏差 {gap:.3g}")
    _check_inside(pair, minimizer, "极小曲线")
    for index, competitor in enumerate(competitors):
        _check_inside(pair, competitor, f"竞争曲线 {index}")

    g_start = pair.g.at(start)
    gx, gy = sample_points(minimizer, LEVEL_CHECK_POINTS)
    drift = float(np.max(np.abs(pair.g(gx, gy) - g_start)))
    tol_level = tol.level_tolerance(g_start)
    if not drift <= tol_level:
        raise NotOnLevelCurve(f"极小曲线上 |g - g(start)| 最大为 {drift:.3g} (阈值 {tol_level:.3g})")

    orth = check_orthogonality(pair, n_samples, seed)
    dens = check_density(pair, n_samples, seed)
    bound = calibrated_bound(pair, start, end)
    lengths = _curve_lengths([minimizer, *competitors], pair, tol.rel_tol, max_workers)
    minimizer_length, competitor_lengths = lengths[0], lengths[1:]
    margins = [length - bound for length in competitor_lengths]

    slack = tol.tol_len * bound
    passed = (
        orth <= tol.tol_orth
        and dens <= tol.tol_rho
        and abs(minimizer_length - bound) <= slack
        and all(m >= -slack for m in margins)
    )
    logger.info(
        "%s: 正交残差 %.3g, 密度误差 %.3g, 下界 %.12g, 极小长度 %.12g, 最小余量 %s -> %s",
        entry_name or "<pair>", orth, dens, bound, minimizer_length,
        f"{min(margins):.3g}" if margins else "n/a", "通过" if passed else "未通过",
    )
    return VerificationReport(
        entry_name=entry_name,
        orthogonality_max_residual=orth,
        density_max_rel_error=dens,
        bound=bound,
        minimizer_length=minimizer_length,
        competitor_margins=margins,
        passed=passed,
        seed=seed,
        n_samples=n_samples,
        n_competitors=len(competitors),
        domain_standoff=pair.domain.margin,
    )
