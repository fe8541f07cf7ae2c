#!/usr/bin/env python3
"""数据模型模块"""

from .models import (
    Point2,
    Vec2,
    Tolerances,
    VerificationReport,
    CliConfig,
    TraceResult,
    LengthResult,
    PlotResult,
    round_significant,
)

__all__ = [
    "Point2",
    "Vec2",
    "Tolerances",
    "VerificationReport",
    "CliConfig",
    "TraceResult",
    "LengthResult",
    "PlotResult",
    "round_significant",
]
