#!/usr/bin/env python3
"""配置管理模块"""

from .config import Config

__all__ = ["Config"]
