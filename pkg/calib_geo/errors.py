#!/usr/bin/env python3
"""
异常定义
所有领域错误都继承自 CalibGeoError (ValueError 的子类)
"""

from typing import List, Sequence


class CalibGeoError(ValueError):
    """calib-geo 错误基类"""


class NumericalError(CalibGeoError):
    """数值计算失败"""


class NonFiniteValue(NumericalError):
    """场函数取值非有限"""


class SingularDensity(NumericalError):
    """密度 ≤ 0 或非有限"""


class NoConvergence(NumericalError):
    """自适应求积或牛顿校正未收敛"""


class DegenerateCurve(NumericalError):
    """曲线欧氏长度为 0"""


class VanishingGradient(NumericalError):
    """梯度范数低于 1e-12"""


class MaxStepsExceeded(NumericalError):
    """追踪步数耗尽且未触发停止条件"""


class ValidityViolated(NumericalError):
    """1 - c²v(y)² ≤ 0"""


class CauchyRiemannViolated(NumericalError):
    """p + iq 不满足 Cauchy-Riemann 方程"""


class NonPositiveArgument(CalibGeoError):
    """Ψ_λ 的自变量必须为正"""


class DomainOutsideQuadrant(CalibGeoError):
    """区域不在第一象限内"""


class EmptyDomain(CalibGeoError):
    """区域内采样不到点"""


class EndpointMismatch(CalibGeoError):
    """曲线端点不一致"""


class NotOnLevelCurve(CalibGeoError):
    """极小曲线偏离 g 的等值线"""


class OutsideDomain(CalibGeoError):
    """曲线离开区域"""


class CannotFitInDomain(CalibGeoError):
    """竞争曲线重采样后仍无法落入区域"""


class UnknownEntry(CalibGeoError):
    """目录中不存在该条目"""

    def __init__(self, name: str, valid_names: Sequence[str]):
        self.name = name
        self.valid_names: List[str] = list(valid_names)
        super().__init__(f"未知条目 '{name}'，可用条目: {', '.join(self.valid_names)}")
