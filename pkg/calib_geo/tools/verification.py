#!/usr/bin/env python3
"""
验证工具模块
list 与 verify 命令的实现
"""

import logging
from typing import List, Optional

from calib_geo.catalog.catalog import catalog_entries, entry_by_name
from calib_geo.config.config import Config
from calib_geo.models.models import Tolerances, VerificationReport
from calib_geo.services.verification_service import VerificationService

logger = logging.getLogger(__name__)


def list_entries() -> List[str]:
    """目录条目名称 (固定顺序)"""
    return [entry.name for entry in catalog_entries()]


def verify_entry(
    name: str,
    competitors: int = 100,
    seed: int = 42,
    tolerances: Optional[Tolerances] = None,
    n_samples: Optional[int] = None,
    service: Optional[VerificationService] = None,
) -> VerificationReport:
    """验证条目并返回证书"""
    entry = entry_by_name(name)
    service = service or VerificationService(Config())
    report = service.verify_entry(entry, competitors, seed, tolerances, n_samples)
    if not report.passed:
        logger.warning("%s 未通过验证", name)
    return report
