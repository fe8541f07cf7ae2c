#!/usr/bin/env python3
"""
calib-geo
共形度量下加权测地线的标定 (calibration) 构造、目录与数值验证
"""

__version__ = "1.0.0"
__author__ = "calib-geo Team"
__description__ = "标定对 (f, g) 的构造、目录与数值证书"
