#!/usr/bin/env python3
"""测地线模块: 等值线追踪、打靶与首积分检查"""

from .tracing import TraceConfig, trace_level
from .shooting import ShotGeodesic, shoot_geodesic, tangent_angle_at_midpoint
from .first_integral import first_integral_residual

__all__ = [
    "TraceConfig",
    "trace_level",
    "ShotGeodesic",
    "shoot_geodesic",
    "tangent_angle_at_midpoint",
    "first_integral_residual",
]
