#!/usr/bin/env python3
"""测试公共夹具"""

import math

import numpy as np
import pytest
from hypothesis import settings

from calib_geo.calibration.pair import CalibrationPair
from calib_geo.config.config import Config
from calib_geo.geometry.fields import Domain, ScalarField
from calib_geo.services.verification_service import VerificationService

settings.register_profile("calib", deadline=None, max_examples=30)
settings.load_profile("calib")


CONFIG_KEYS = (
    "CALIB_GEO_THREADS",
    "CALIB_GEO_SAMPLES",
    "CALIB_GEO_QUAD_REL_TOL",
    "CALIB_GEO_COMPETITOR_MODES",
    "CALIB_GEO_COMPETITOR_AMPLITUDE",
    "CALIB_GEO_COMPETITOR_VERTICES",
    "LOG_LEVEL",
    "DEBUG_MODE",
)


@pytest.fixture
def clean_env(tmp_path, monkeypatch):
    """清空配置相关环境变量, 测试中 load_dotenv 写入的值在结束时一并撤销"""
    for key in CONFIG_KEYS:
        # 先 setenv, monkeypatch 才会记录原值
        monkeypatch.setenv(key, "")
        monkeypatch.delenv(key)
    return tmp_path


@pytest.fixture
def config(clean_env):
    """不读取工作目录下 .env 的配置"""
    return Config(env_file=str(clean_env / "missing.env"))


@pytest.fixture
def service(config):
    return VerificationService(config)


@pytest.fixture
def euclidean_pair():
    """f = x, g = y, ρ = 1: 水平线是极小曲线"""
    return CalibrationPair(
        f=ScalarField(value=lambda x, y: x, gradient=lambda x, y: (np.ones_like(x), np.zeros_like(x)), name="x"),
        g=ScalarField(value=lambda x, y: y, gradient=lambda x, y: (np.zeros_like(x), np.ones_like(x)), name="y"),
        domain=Domain.box(0.0, 1.0, 0.0, 1.0),
        rho=ScalarField(value=lambda x, y: np.ones_like(x), name="one"),
    )


@pytest.fixture
def hyperbolic_rho():
    return ScalarField(
        value=lambda x, y: 1.0 / y,
        gradient=lambda x, y: (np.zeros_like(x), -1.0 / (y * y)),
        name="1/y",
    )


def hyperbolic_distance(p1, p2):
    d2 = (p2[0] - p1[0]) ** 2 + (p2[1] - p1[1]) ** 2
    return math.acosh(1.0 + d2 / (2.0 * p1[1] * p2[1]))
