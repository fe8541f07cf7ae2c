#!/usr/bin/env python3
"""
竞争曲线生成
弦 + 法向正弦扰动, 由种子确定; 离开区域的曲线被拒绝 (不裁剪)
"""

import logging
import math
from typing import List

import numpy as np

from calib_geo.errors import CannotFitInDomain
from calib_geo.geometry.curves import Polyline
from calib_geo.geometry.fields import Domain
from calib_geo.models.models import Point2

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 100
DEFAULT_VERTICES = 129


def generate_competitor(p1: Point2, p2: Point2, domain: Domain, seed: int, n_modes: int = 4,
                        amplitude: float = 0.2, n_vertices: int = DEFAULT_VERTICES) -> Polyline:
    """生成从 p1 到 p2 的竞争折线"""
    if p1 == p2:
        raise ValueError("竞争曲线的两个端点必须不同")
    if n_modes < 1:
        raise ValueError("n_modes 至少为 1")
    if not amplitude > 0:
        raise ValueError("amplitude 必须为正")
    if n_vertices < 3:
        raise ValueError("n_vertices 至少为 3")

    rng = np.random.default_rng(seed)
    coeffs = rng.uniform(-1.0, 1.0, n_modes) / np.arange(1, n_modes + 1)
    u = np.linspace(0.0, 1.0, n_vertices)
    shape = np.sin(np.pi * np.outer(u, np.arange(1, n_modes + 1))) @ coeffs

    cx, cy = p2.x - p1.x, p2.y - p1.y
    chord = math.hypot(cx, cy)
    nx, ny = -cy / chord, cx / chord

    scale = amplitude
    for attempt in range(MAX_ATTEMPTS):
        offset = scale * chord * shape
        x = p1.x + u * cx + offset * nx
        y = p1.y + u * cy + offset * ny
        x[0], y[0], x[-1], y[-1] = p1.x, p1.y, p2.x, p2.y
        if np.all(domain.inside(x, y)):
            if attempt:
                logger.debug("竞争曲线 seed=%d 在第 %d 次尝试后落入区域 (振幅 %.3g)", seed, attempt + 1, scale)
            return Polyline.from_xy(x, y)
        scale *= 0.5
    raise CannotFitInDomain(f"seed={seed}: {MAX_ATTEMPTS} 次振幅减半后仍无法落入区域")


def competitor_batch(p1: Point2, p2: Point2, domain: Domain, n: int, seed: int, n_modes: int = 4,
                     amplitude: float = 0.2, n_vertices: int = DEFAULT_VERTICES) -> List[Polyline]:
    """第 k 条竞争曲线使用种子 seed + k"""
    return [
        generate_competitor(p1, p2, domain, seed + k, n_modes, amplitude, n_vertices)
        for k in range(n)
    ]
