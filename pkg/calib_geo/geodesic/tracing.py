#!/usr/bin/env python3
"""
等值线追踪
预测: 沿 ∇g 的垂直方向走 step; 校正: 沿 ∇g 的牛顿迭代回到 g = g(start)
"""

import logging
import math
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from calib_geo.errors import (
    DegenerateCurve,
    MaxStepsExceeded,
    NoConvergence,
    NonFiniteValue,
    OutsideDomain,
    VanishingGradient,
)
from calib_geo.geometry.curves import Polyline
from calib_geo.geometry.fields import Domain, ScalarField
from calib_geo.models.models import Point2

logger = logging.getLogger(__name__)

GRADIENT_FLOOR = 1e-12
MAX_CORRECTOR_ITERATIONS = 20
DAMPING = 0.5
MIN_STEP_FRACTION = 1e-6


class TraceConfig(BaseModel):
    """追踪参数"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    step: float = Field(default=1e-2, gt=0, description="预测步的欧氏长度")
    max_steps: int = Field(default=10000, ge=1, description="最大步数")
    corrector_tol: float = Field(default=1e-12, gt=0, description="|g - g(start)| 的校正阈值")
    stop: Optional[Callable[[Point2], bool]] = Field(default=None, description="停止条件")
    domain: Optional[Domain] = Field(default=None, description="离开该区域即停止")


def _gradient(g: ScalarField, x: float, y: float) -> Tuple[float, float, float]:
    gx, gy = g.gradient_xy(np.array([x]), np.array([y]))
    gx, gy = float(gx[0]), float(gy[0])
    norm = math.hypot(gx, gy)
    if not math.isfinite(norm):
        raise NonFiniteValue(f"∇g 在 ({x:.6g}, {y:.6g}) 处非有限")
    if norm < GRADIENT_FLOOR:
        raise VanishingGradient(f"∇g 在 ({x:.6g}, {y:.6g}) 处消失")
    return gx, gy, norm


def _level(g: ScalarField, x: float, y: float) -> float:
    return float(g(x, y))


def _correct(g: ScalarField, x: float, y: float, g0: float, tol: float) -> Tuple[float, float]:
    """牛顿校正; 残差变大时步长减半"""
    residual = _level(g, x, y) - g0
    for _ in range(MAX_CORRECTOR_ITERATIONS):
        if abs(residual) <= tol:
            return x, y
        gx, gy, norm = _gradient(g, x, y)
        dx, dy = -residual * gx / norm ** 2, -residual * gy / norm ** 2
        tx, ty = x + dx, y + dy
        trial = _level(g, tx, ty) - g0
        if not (math.isfinite(trial) and abs(trial) <= abs(residual)):
            tx, ty = x + DAMPING * dx, y + DAMPING * dy
            trial = _level(g, tx, ty) - g0
        if not math.isfinite(trial):
            raise NonFiniteValue(f"校正点 ({tx:.6g}, {ty:.6g}) 处 g 非有限")
        x, y, residual = tx, ty, trial
    if abs(residual) <= tol:
        return x, y
    raise NoConvergence(f"牛顿校正 {MAX_CORRECTOR_ITERATIONS} 次后残差 {residual:.3g}")


def _inside(domain: Optional[Domain], x: float, y: float) -> bool:
    if domain is None:
        return True
    return bool(np.asarray(domain.contains(np.array([x]), np.array([y])))[0])


def _advance(
    g: ScalarField, x: float, y: float, g0: float, direction_sign: int, cfg: TraceConfig
) -> Optional[Tuple[float, float]]:
    """走一步; 离开区域时步长减半重试, 到 MIN_STEP_FRACTION·step 仍离开则返回 None"""
    gx, gy, norm = _gradient(g, x, y)
    h = cfg.step
    floor = MIN_STEP_FRACTION * cfg.step
    while h >= floor:
        px = x + direction_sign * h * gy / norm
        py = y - direction_sign * h * gx / norm
        if _inside(cfg.domain, px, py):
            try:
                cx, cy = _correct(g, px, py, g0, cfg.corrector_tol)
            except NonFiniteValue:
                # 区域外 g 可能无定义
                if cfg.domain is None:
                    raise
            else:
                if _inside(cfg.domain, cx, cy):
                    return cx, cy
        h *= 0.5
    return None


def trace_level(g: ScalarField, start: Point2, direction_sign: int, cfg: TraceConfig) -> Polyline:
    """
    追踪 g 过 start 的等值线

    direction_sign = +1 时沿 ∇g 顺时针旋转 90° 的方向 (g_y, -g_x) 前进,
    -1 时反向。靠近区域边界时步长逐次减半, 直到下限步长也会离开 cfg.domain;
    停止条件触发、离开区域或步数用尽时结束。
    """
    if direction_sign not in (-1, 1):
        raise ValueError("direction_sign 必须是 +1 或 -1")
    if not _inside(cfg.domain, start.x, start.y):
        raise OutsideDomain(f"起点 ({start.x}, {start.y}) 不在区域内")
    g0 = g.at(start)
    _gradient(g, start.x, start.y)

    xs: List[float] = [start.x]
    ys: List[float] = [start.y]
    x, y = start.x, start.y
    reason = "max_steps"
    for _ in range(cfg.max_steps):
        point = _advance(g, x, y, g0, direction_sign, cfg)
        if point is None:
            reason = "domain_exit"
            break
        x, y = point
        xs.append(x)
        ys.append(y)
        if cfg.stop is not None and cfg.stop(Point2.of(x, y)):
            reason = "stop"
            break
    else:
        if cfg.stop is not None:
            raise MaxStepsExceeded(f"{cfg.max_steps} 步内未触发停止条件")

    if len(xs) < 2:
        raise DegenerateCurve("起点紧贴区域边界, 最小步长也会离开区域")
    logger.debug("等值线追踪: %d 个点, 结束原因 %s", len(xs), reason)
    return Polyline.from_xy(xs, ys)
