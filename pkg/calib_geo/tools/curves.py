#!/usr/bin/env python3
"""
曲线工具模块
trace 与 length 命令的实现
"""

import logging
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from calib_geo.catalog.catalog import entry_by_name
from calib_geo.geodesic.tracing import TraceConfig, trace_level
from calib_geo.geometry.curves import read_polyline_csv, write_polyline_csv
from calib_geo.geometry.quadrature import weighted_length
from calib_geo.models.models import LengthResult, Point2, TraceResult

logger = logging.getLogger(__name__)


def trace_entry(
    name: str,
    out: str,
    start: Optional[Tuple[float, float]] = None,
    direction: int = 1,
    step: float = 1e-2,
    max_steps: int = 10000,
) -> TraceResult:
    """
    追踪条目 g 的等值线并写出 CSV

    缺省起点为参考极小曲线的起点; 离开条目区域或步数用尽时停止
    """
    entry = entry_by_name(name)
    origin = Point2.of(*start) if start is not None else entry.minimizer.start
    cfg = TraceConfig(step=step, max_steps=max_steps, domain=entry.pair.domain)
    polyline = trace_level(entry.pair.g, origin, direction, cfg)
    level = entry.pair.g.at(origin)
    residual = float(np.max(np.abs(entry.pair.g(polyline.x, polyline.y) - level)))
    write_polyline_csv(polyline, out)
    logger.info("%s: 追踪 %d 个点 -> %s", name, len(polyline), out)
    return TraceResult(
        entry_name=name,
        level=level,
        n_points=len(polyline),
        max_level_residual=residual,
        out=str(Path(out)),
    )


def curve_length(name: str, curve: str, rel_tol: float = 1e-9) -> LengthResult:
    """读取 CSV 折线, 计算条目密度下的加权长度"""
    entry = entry_by_name(name)
    polyline = read_polyline_csv(curve)
    value = weighted_length(polyline, entry.pair.rho, rel_tol)
    return LengthResult(entry_name=name, curve=curve, n_points=len(polyline), weighted_length=value)
