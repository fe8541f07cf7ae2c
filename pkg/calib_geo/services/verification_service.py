#!/usr/bin/env python3
"""
验证服务
按配置生成竞争曲线并调用 verify_minimizer
"""

import logging
from typing import List, Optional

from calib_geo.calibration.competitors import competitor_batch
from calib_geo.calibration.verification import verify_minimizer
from calib_geo.catalog.catalog import CatalogEntry
from calib_geo.config.config import Config
from calib_geo.geometry.curves import Polyline
from calib_geo.models.models import Tolerances, VerificationReport

logger = logging.getLogger(__name__)


class VerificationService:
    """目录条目验证 - 竞争曲线参数与并行度来自配置"""
    def __init__(self, config: Config):
        self.config = config

    def competitors_for(self, entry: CatalogEntry, n: int, seed: int) -> List[Polyline]:
        """条目默认端点之间的 n 条竞争曲线, 第 k 条使用种子 seed + k"""
        if n < 0:
            raise ValueError("竞争曲线数不能为负数")
        p1, p2 = entry.default_endpoints
        return competitor_batch(
            p1,
            p2,
            entry.pair.domain,
            n,
            seed,
            n_modes=self.config.competitor_modes,
            amplitude=self.config.competitor_amplitude,
            n_vertices=self.config.competitor_vertices,
        )

    def verify_entry(self, entry: CatalogEntry, n_competitors: int = 100, seed: int = 42,
                     tolerances: Optional[Tolerances] = None,
                     n_samples: Optional[int] = None) -> VerificationReport:
        """验证条目的参考极小曲线"""
        tol = tolerances or Tolerances(rel_tol=self.config.quad_rel_tol)
        competitors = self.competitors_for(entry, n_competitors, seed)
        logger.info("验证 %s: %d 条竞争曲线, seed=%d", entry.name, n_competitors, seed)
        return verify_minimizer(
            entry.pair,
            entry.minimizer,
            competitors,
            tol,
            entry_name=entry.name,
            seed=seed,
            n_samples=n_samples or self.config.n_samples,
            max_workers=self.config.max_workers,
        )
