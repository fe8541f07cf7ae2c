#!/usr/bin/env python3
"""
加权线积分
自适应二分 + 每个子区间 5 点 Gauss-Legendre, 对所有待细分区间批量向量化求值
"""

import logging
import math
from typing import Callable

import numpy as np

from calib_geo.errors import NoConvergence, SingularDensity
from calib_geo.geometry.curves import Curve, Polyline
from calib_geo.geometry.fields import ScalarField

logger = logging.getLogger(__name__)

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(5)
MAX_DEPTH = 48
DEFAULT_REL_TOL = 1e-9
INITIAL_PANELS = 8


def _panel_rule(fn: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    return half * (fn(nodes) @ _GL_WEIGHTS)


def adaptive_gauss(fn: Callable[[np.ndarray], np.ndarray], lo, hi, rel_tol: float = DEFAULT_REL_TOL,
                   max_depth: int = MAX_DEPTH) -> float:
    """
    对若干初始区间 [lo_i, hi_i] 上的积分之和做自适应求积

    fn 接收任意形状的参数数组并返回同形的被积函数值。每轮把所有未收敛区间
    一分为二, 整段与两半的差作为误差估计; 误差预算按区间宽度分摊
    rel_tol·|当前总和估计|。
    """
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    total_width = float(np.sum(hi - lo))
    if total_width <= 0.0:
        return 0.0
    whole = _panel_rule(fn, lo, hi)
    accepted = []
    eps = np.finfo(float).eps
    for _ in range(max_depth):
        mid = 0.5 * (lo + hi)
        left = _panel_rule(fn, lo, mid)
        right = _panel_rule(fn, mid, hi)
        refined = left + right
        estimate = abs(math.fsum(accepted) + float(np.sum(refined)))
        budget = rel_tol * estimate * (hi - lo) / total_width
        done = np.abs(refined - whole) <= np.maximum(budget, 64.0 * eps * np.abs(refined))
        accepted.extend(refined[done].tolist())
        if np.all(done):
            return math.fsum(accepted)
        keep = ~done
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        whole = np.concatenate([left[keep], right[keep]])
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
    raise NoConvergence(f"自适应求积超过最大深度 {max_depth}, 剩余 {lo.size} 个区间")


def _checked_density(rho: ScalarField, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    values = rho(x, y)
    bad = ~np.isfinite(values) | (values <= 0.0)
    if np.any(bad):
        idx = np.flatnonzero(bad.ravel())[0]
        raise SingularDensity(
            f"密度 {rho.name or '<anonymous>'} 在 ({x.ravel()[idx]:.6g}, {y.ravel()[idx]:.6g}) "
            f"处取值 {values.ravel()[idx]!r}"
        )
    return values


def weighted_length(curve: Curve, rho: ScalarField, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """∫ ρ ds: 参数曲线对 t 积分, 折线逐段 (段内为直线) 积分"""
    if not 0.0 < rel_tol <= 1e-2:
        raise ValueError("rel_tol 必须在 (0, 1e-2] 内")

    if isinstance(curve, Polyline):
        pts = curve.points
        seg = np.diff(pts, axis=0)
        seg_len = np.hypot(seg[:, 0], seg[:, 1])
        n_seg = seg.shape[0]

        def integrand(s: np.ndarray) -> np.ndarray:
            k = np.clip(np.floor(s).astype(int), 0, n_seg - 1)
            u = s - k
            x = pts[k, 0] + u * seg[k, 0]
            y = pts[k, 1] + u * seg[k, 1]
            return _checked_density(rho, x, y) * seg_len[k]

        edges = np.arange(n_seg + 1, dtype=float)
        return adaptive_gauss(integrand, edges[:-1], edges[1:], rel_tol)

    def integrand(t: np.ndarray) -> np.ndarray:
        x, y = curve.evaluate(t)
        dx, dy = curve.derivative(t)
        return _checked_density(rho, x, y) * np.hypot(dx, dy)

    a, b = sorted((curve.t0, curve.t1))
    edges = np.linspace(a, b, INITIAL_PANELS + 1)
    return adaptive_gauss(integrand, edges[:-1], edges[1:], rel_tol)


def exact_increment(f: ScalarField, curve: Curve) -> float:
    """∫_X df = f(终点) - f(起点), 与路径无关"""
    return f.at(curve.end) - f.at(curve.start)
