#!/usr/bin/env python3
"""标定模块: 标定对、假设检查与极小性验证"""

from .pair import CalibrationPair, sample_interior
from .competitors import competitor_batch, generate_competitor
from .verification import (
    calibrated_bound,
    check_density,
    check_orthogonality,
    verify_minimizer,
)

__all__ = [
    "CalibrationPair",
    "sample_interior",
    "competitor_batch",
    "generate_competitor",
    "calibrated_bound",
    "check_density",
    "check_orthogonality",
    "verify_minimizer",
]
