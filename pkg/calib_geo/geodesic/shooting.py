#!/usr/bin/env python3
"""
测地线打靶
共形度量 ρ²(dx² + dy²) 的测地线方程, s 为欧氏弧长:
    x' = cos θ, y' = sin θ, θ' = ∂_y(ln ρ)·cos θ - ∂_x(ln ρ)·sin θ
用经典四阶 Runge-Kutta 积分
"""

import logging
import math
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from calib_geo.errors import NonFiniteValue, OutsideDomain, SingularDensity
from calib_geo.geometry.curves import Curve, Polyline, ParametricCurve, resample_arclength
from calib_geo.geometry.fields import Domain, ScalarField
from calib_geo.models.models import Point2

logger = logging.getLogger(__name__)


class ShotGeodesic(BaseModel):
    """打靶结果"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    curve: Optional[Polyline] = Field(description="轨迹, 一步都未完成时为空")
    status: Literal["complete", "domain_exit"] = Field(description="结束状态")
    steps_taken: int = Field(ge=0, description="完成的步数")


def _rhs(rho: ScalarField, x: float, y: float, theta: float) -> Tuple[float, float, float]:
    r = float(rho(x, y))
    if not (math.isfinite(r) and r > 0):
        raise SingularDensity(f"密度在 ({x:.6g}, {y:.6g}) 处取值 {r!r}")
    try:
        rx, ry = rho.gradient_xy(np.array([x]), np.array([y]))
    except NonFiniteValue as exc:
        raise SingularDensity(str(exc)) from exc
    lx, ly = float(rx[0]) / r, float(ry[0]) / r
    if not (math.isfinite(lx) and math.isfinite(ly)):
        raise SingularDensity(f"ln ρ 的梯度在 ({x:.6g}, {y:.6g}) 处非有限")
    c, s = math.cos(theta), math.sin(theta)
    return c, s, ly * c - lx * s


def _rk4_step(rho: ScalarField, x: float, y: float, theta: float, h: float) -> Tuple[float, float, float]:
    k1 = _rhs(rho, x, y, theta)
    k2 = _rhs(rho, x + 0.5 * h * k1[0], y + 0.5 * h * k1[1], theta + 0.5 * h * k1[2])
    k3 = _rhs(rho, x + 0.5 * h * k2[0], y + 0.5 * h * k2[1], theta + 0.5 * h * k2[2])
    k4 = _rhs(rho, x + h * k3[0], y + h * k3[1], theta + h * k3[2])
    return (
        x + h * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]) / 6.0,
        y + h * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]) / 6.0,
        theta + h * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]) / 6.0,
    )


def shoot_geodesic(rho: ScalarField, start: Point2, theta0: float, step: float, n_steps: int,
                   domain: Optional[Domain] = None) -> ShotGeodesic:
    """
    从 start 以初始方向角 theta0 发射测地线

    给定 domain 时离开区域 (或在区域边缘遇到奇异密度) 返回部分轨迹,
    status 为 domain_exit; 否则奇异密度直接报 SingularDensity
    """
    if not step > 0:
        raise ValueError("step 必须为正")
    if n_steps < 1:
        raise ValueError("n_steps 至少为 1")
    if domain is not None and not domain.contains_point(start, standoff=0.0):
        raise OutsideDomain(f"起点 ({start.x}, {start.y}) 不在区域内")

    xs, ys = [start.x], [start.y]
    x, y, theta = start.x, start.y, theta0
    status = "complete"
    for _ in range(n_steps):
        try:
            nx, ny, ntheta = _rk4_step(rho, x, y, theta, step)
        except SingularDensity:
            if domain is None:
                raise
            status = "domain_exit"
            break
        if domain is not None and not domain.contains_point(Point2.of(nx, ny), standoff=0.0):
            status = "domain_exit"
            break
        x, y, theta = nx, ny, ntheta
        xs.append(x)
        ys.append(y)

    steps = len(xs) - 1
    logger.debug("打靶: %d 步, 状态 %s", steps, status)
    curve = Polyline.from_xy(xs, ys) if steps else None
    return ShotGeodesic(curve=curve, status=status, steps_taken=steps)


def tangent_angle_at_midpoint(curve: Curve) -> Tuple[Point2, float]:
    """中间顶点及其切向角 (相邻顶点的中心差分); 参数曲线先按弧长重采样"""
    if isinstance(curve, ParametricCurve):
        curve = resample_arclength(curve, 257)
    pts = curve.points
    k = len(curve) // 2
    if len(curve) == 2:
        d = pts[1] - pts[0]
        mid = 0.5 * (pts[0] + pts[1])
        return Point2.of(*mid), math.atan2(d[1], d[0])
    d = pts[k + 1] - pts[k - 1]
    return Point2.of(*pts[k]), math.atan2(d[1], d[0])
