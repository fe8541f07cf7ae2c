#!/usr/bin/env python3
"""
绘图工具模块
SVG: 区域包围盒、参考极小曲线与竞争曲线
"""

import logging
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from calib_geo.catalog.catalog import entry_by_name  # noqa: E402
from calib_geo.config.config import Config  # noqa: E402
from calib_geo.geometry.curves import sample_points  # noqa: E402
from calib_geo.models.models import PlotResult  # noqa: E402
from calib_geo.services.verification_service import VerificationService  # noqa: E402

logger = logging.getLogger(__name__)

PADDING = 0.05
DPI = 100


def plot_entry(
    name: str,
    out: str,
    competitors: int = 0,
    seed: int = 42,
    width: int = 800,
    height: int = 600,
    service: Optional[VerificationService] = None,
) -> PlotResult:
    """画出条目; 相同参数得到逐字节相同的 SVG"""
    entry = entry_by_name(name)
    service = service or VerificationService(Config())
    curves = service.competitors_for(entry, competitors, seed) if competitors else []
    xmin, xmax, ymin, ymax = entry.pair.domain.bbox
    pad_x, pad_y = PADDING * (xmax - xmin), PADDING * (ymax - ymin)

    with plt.rc_context({"svg.hashsalt": "calib-geo", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(width / DPI, height / DPI), dpi=DPI)
        try:
            ax.add_patch(Rectangle((xmin, ymin), xmax - xmin, ymax - ymin,
                                   fill=False, edgecolor="0.4", linestyle="--", linewidth=0.8))
            for curve in curves:
                ax.plot(curve.x, curve.y, color="0.65", linewidth=0.6)
            mx, my = sample_points(entry.minimizer, 513)
            ax.plot(mx, my, color="tab:red", linewidth=2.0, label="minimizer")
            p1, p2 = entry.default_endpoints
            ax.plot([p1.x, p2.x], [p1.y, p2.y], "o", color="black", markersize=4)
            ax.set_xlim(xmin - pad_x, xmax + pad_x)
            ax.set_ylim(ymin - pad_y, ymax + pad_y)
            ax.set_aspect("auto")
            ax.set_title(name)
            ax.legend(loc="best")
            fig.savefig(out, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    logger.info("%s: SVG -> %s (%d 条竞争曲线)", name, out, len(curves))
    return PlotResult(entry_name=name, out=out, n_competitors=len(curves))
