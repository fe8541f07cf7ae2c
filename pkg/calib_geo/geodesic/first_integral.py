#!/usr/bin/env python3
"""首积分 c = (1/v(y))·dx/ds 的守恒残差"""

from typing import Callable

import numpy as np

from calib_geo.errors import DegenerateCurve, SingularDensity
from calib_geo.geometry.curves import Curve, Polyline

NODES_PER_CURVE = 64

_GL_X, _ = np.polynomial.legendre.leggauss(NODES_PER_CURVE)


def first_integral_residual(v: Callable[[np.ndarray], np.ndarray], curve: Curve, c: float) -> float:
    """
    max |(1/v(y))·dx/ds - c|

    参数曲线取 64 个 Gauss 节点并使用参数导数, 折线取各段中点与段方向;
    ds 为沿曲线走向的欧氏弧长元
    """
    if isinstance(curve, Polyline):
        d = np.diff(curve.points, axis=0)
        seg = np.hypot(d[:, 0], d[:, 1])
        dx_ds = d[:, 0] / seg
        y = 0.5 * (curve.y[:-1] + curve.y[1:])
    else:
        t = 0.5 * (curve.t0 + curve.t1) + 0.5 * (curve.t1 - curve.t0) * _GL_X
        _, y = curve.evaluate(t)
        xd, yd = curve.derivative(t)
        speed = np.hypot(xd, yd)
        if np.any(speed == 0.0):
            raise DegenerateCurve("参数曲线速度为 0")
        dx_ds = np.sign(curve.t1 - curve.t0) * xd / speed
    with np.errstate(all="ignore"):
        vv = np.asarray(v(y), dtype=float)
    if np.any(~np.isfinite(vv) | (vv <= 0.0)):
        raise SingularDensity("v(y) 在曲线上非正或非有限")
    return float(np.max(np.abs(dx_ds / vv - c)))
