#!/usr/bin/env python3
"""
配置管理模块
从 .env 文件与环境变量加载所有配置参数
"""

import os
import logging
from typing import Dict, Optional, Union
from dotenv import load_dotenv


class Config:
    """配置管理 - 从 .env 文件加载所有配置参数"""
    def __init__(self, env_file: str = ".env"):
        # 加载 .env 文件 (环境变量优先)
        load_dotenv(env_file, override=False)

        # 并行配置, 0 表示自动
        self.threads = int(os.getenv("CALIB_GEO_THREADS", "0"))
        if self.threads < 0:
            raise ValueError("CALIB_GEO_THREADS 不能为负数")

        # 数值配置
        self.quad_rel_tol = float(os.getenv("CALIB_GEO_QUAD_REL_TOL", "1e-9"))
        self.n_samples = int(os.getenv("CALIB_GEO_SAMPLES", "500"))

        # 竞争曲线配置
        self.competitor_modes = int(os.getenv("CALIB_GEO_COMPETITOR_MODES", "4"))
        self.competitor_amplitude = float(os.getenv("CALIB_GEO_COMPETITOR_AMPLITUDE", "0.2"))
        self.competitor_vertices = int(os.getenv("CALIB_GEO_COMPETITOR_VERTICES", "129"))

        # 日志配置
        self.log_level = os.getenv("LOG_LEVEL", "WARNING")
        self.debug_mode = os.getenv("DEBUG_MODE", "false").lower() == "true"

        # 设置日志级别 (输出到 stderr, stdout 留给报告)
        logging.basicConfig(level=getattr(logging, self.log_level.upper(), logging.WARNING))

    @property
    def max_workers(self) -> Optional[int]:
        """线程池大小, None 交给 ThreadPoolExecutor 自动决定"""
        return self.threads or None

    def as_dict(self) -> Dict[str, Union[int, float, str, bool]]:
        """导出当前配置"""
        return {
            "threads": self.threads,
            "quad_rel_tol": self.quad_rel_tol,
            "n_samples": self.n_samples,
            "competitor_modes": self.competitor_modes,
            "competitor_amplitude": self.competitor_amplitude,
            "competitor_vertices": self.competitor_vertices,
            "log_level": self.log_level,
            "debug_mode": self.debug_mode,
        }
