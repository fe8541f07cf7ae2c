#!/usr/bin/env python3
"""平面几何模块: 场、区域、曲线与加权线积分"""

from .fields import Domain, ScalarField, grad
from .curves import (
    Curve,
    ParametricCurve,
    Polyline,
    hausdorff_distance,
    read_polyline_csv,
    resample_arclength,
    sample_points,
    write_polyline_csv,
)
from .quadrature import adaptive_gauss, exact_increment, weighted_length

__all__ = [
    "Domain",
    "ScalarField",
    "grad",
    "Curve",
    "ParametricCurve",
    "Polyline",
    "hausdorff_distance",
    "read_polyline_csv",
    "resample_arclength",
    "sample_points",
    "write_polyline_csv",
    "adaptive_gauss",
    "exact_increment",
    "weighted_length",
]
