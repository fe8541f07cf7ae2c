#!/usr/bin/env python3
"""
数据模型定义
使用Pydantic进行数据验证和序列化
"""

import json
import math
from typing import List, Literal, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, field_serializer, model_validator


def round_significant(value: float, digits: int = 15) -> float:
    """保留有效数字, 保证 JSON 输出可复现"""
    return float(f"{value:.{digits}g}")


class Point2(BaseModel):
    """平面点"""
    model_config = ConfigDict(frozen=True)

    x: float = Field(allow_inf_nan=False, description="横坐标")
    y: float = Field(allow_inf_nan=False, description="纵坐标")

    @classmethod
    def of(cls, x: float, y: float) -> "Point2":
        return cls(x=float(x), y=float(y))

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)

    def distance(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


class Vec2(BaseModel):
    """平面向量"""
    model_config = ConfigDict(frozen=True)

    dx: float = Field(allow_inf_nan=False)
    dy: float = Field(allow_inf_nan=False)

    def norm(self) -> float:
        return math.hypot(self.dx, self.dy)

    def dot(self, other: "Vec2") -> float:
        return self.dx * other.dx + self.dy * other.dy


class Tolerances(BaseModel):
    """验证阈值"""
    model_config = ConfigDict(frozen=True)

    tol_orth: float = Field(default=1e-9, gt=0, description="正交残差阈值")
    tol_rho: float = Field(default=1e-8, gt=0, description="密度相对误差阈值")
    tol_len: float = Field(default=1e-6, gt=0, description="长度相对阈值")
    tol_level: Optional[float] = Field(
        default=None, gt=0, description="等值线阈值, 空值时取 1e-8·(1+|g(start)|)"
    )
    rel_tol: float = Field(default=1e-9, gt=0, le=1e-2, description="求积相对精度")

    def level_tolerance(self, g_start: float) -> float:
        if self.tol_level is not None:
            return self.tol_level
        return 1e-8 * (1.0 + abs(g_start))


class VerificationReport(BaseModel):
    """验证证书"""
    entry_name: str = Field(description="条目名称")
    orthogonality_max_residual: float = Field(description="max |∇f·∇g|/(‖∇f‖‖∇g‖)")
    density_max_rel_error: float = Field(description="max |‖∇f‖-ρ|/ρ")
    bound: float = Field(description="|Δf| 标定下界")
    minimizer_length: float = Field(description="极小曲线的加权长度")
    competitor_margins: List[float] = Field(description="竞争曲线长度 - 下界, 按序号排列")
    passed: bool = Field(description="是否通过")
    seed: int = Field(description="随机种子")
    n_samples: int = Field(description="采样点数")
    n_competitors: int = Field(description="竞争曲线数")
    domain_standoff: float = Field(description="采样与竞争曲线距边界的最小距离")

    @field_serializer(
        "orthogonality_max_residual",
        "density_max_rel_error",
        "bound",
        "minimizer_length",
        "domain_standoff",
    )
    def _serialize_real(self, value: float) -> float:
        return round_significant(value)

    @field_serializer("competitor_margins")
    def _serialize_margins(self, values: List[float]) -> List[float]:
        return [round_significant(v) for v in values]

    def to_json(self) -> str:
        """键排序的 JSON, 相同输入得到逐字节相同的输出"""
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


class CliConfig(BaseModel):
    """命令行参数"""
    model_config = ConfigDict(frozen=True)

    subcommand: Literal["list", "verify", "trace", "length", "plot"]
    entry: str = ""
    competitors: int = Field(default=100, ge=0)
    seed: int = Field(default=42, ge=0)
    tol_len: Optional[float] = Field(default=None, gt=0)
    tol_orth: Optional[float] = Field(default=None, gt=0)
    tol_rho: Optional[float] = Field(default=None, gt=0)
    samples: Optional[int] = Field(default=None, ge=1)
    start: Optional[Tuple[float, float]] = None
    direction: Literal[-1, 1] = 1
    step: float = Field(default=1e-2, gt=0)
    max_steps: int = Field(default=10000, ge=1)
    curve: str = ""
    out: str = ""
    width: int = Field(default=800, ge=1)
    height: int = Field(default=600, ge=1)

    @model_validator(mode="after")
    def _check_required(self) -> "CliConfig":
        if self.subcommand in ("verify", "trace", "plot") and not self.entry:
            raise ValueError(f"{self.subcommand} 需要条目名称")
        if self.subcommand == "length" and not (self.entry and self.curve):
            raise ValueError("length 需要 --entry 与 --curve")
        if self.subcommand in ("trace", "plot") and not self.out:
            raise ValueError(f"{self.subcommand} 需要 --out")
        return self

    def tolerances(self, rel_tol: float = 1e-9) -> Tolerances:
        """合并命令行覆盖的阈值"""
        overrides = {
            key: value
            for key, value in (
                ("tol_len", self.tol_len),
                ("tol_orth", self.tol_orth),
                ("tol_rho", self.tol_rho),
            )
            if value is not None
        }
        return Tolerances(rel_tol=rel_tol, **overrides)


class TraceResult(BaseModel):
    """trace 命令结果"""
    entry_name: str = Field(description="条目名称")
    level: float = Field(description="追踪的等值 g(start)")
    n_points: int = Field(description="折线点数")
    max_level_residual: float = Field(description="max |g - g(start)|")
    out: str = Field(description="CSV 输出路径")


class LengthResult(BaseModel):
    """length 命令结果"""
    entry_name: str = Field(description="条目名称")
    curve: str = Field(description="曲线 CSV 路径")
    n_points: int = Field(description="折线点数")
    weighted_length: float = Field(description="条目密度下的加权长度")


class PlotResult(BaseModel):
    """plot 命令结果"""
    entry_name: str = Field(description="条目名称")
    out: str = Field(description="SVG 输出路径")
    n_competitors: int = Field(description="绘制的竞争曲线数")
