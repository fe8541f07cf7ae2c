#!/usr/bin/env python3
"""
标量场与区域
场函数对 numpy 数组向量化求值, 梯度优先使用解析式, 否则回退到中心差分
"""

import math
from typing import Any, Callable, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from calib_geo.errors import NonFiniteValue
from calib_geo.models.models import Point2, Vec2

ArrayLike = Any
FieldFn = Callable[[np.ndarray, np.ndarray], np.ndarray]
GradientFn = Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]
PredicateFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _broadcast(value: ArrayLike, like: np.ndarray) -> np.ndarray:
    """常数场也返回与输入同形的数组"""
    arr = np.asarray(value, dtype=float)
    if arr.shape == like.shape:
        return arr
    return np.broadcast_to(arr, np.broadcast_shapes(arr.shape, like.shape)).astype(float)


class Domain(BaseModel):
    """开区域 Ω: 包含判定 + 包围盒 + 边界留距"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    contains: PredicateFn = Field(description="向量化的包含判定")
    bbox: Tuple[float, float, float, float] = Field(description="(xmin, xmax, ymin, ymax)")
    margin: float = Field(gt=0, description="采样与积分距边界的最小距离")

    @model_validator(mode="before")
    @classmethod
    def _default_margin(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("margin") is None and "bbox" in data:
            xmin, xmax, ymin, ymax = data["bbox"]
            data = {**data, "margin": 1e-6 * math.hypot(xmax - xmin, ymax - ymin)}
        return data

    @model_validator(mode="after")
    def _check_bbox(self) -> "Domain":
        xmin, xmax, ymin, ymax = self.bbox
        if not all(math.isfinite(v) for v in self.bbox):
            raise ValueError("包围盒必须有限")
        if not (xmin < xmax and ymin < ymax):
            raise ValueError("包围盒为空")
        return self

    @classmethod
    def box(cls, xmin: float, xmax: float, ymin: float, ymax: float,
            margin: Optional[float] = None) -> "Domain":
        """开矩形 (xmin, xmax) × (ymin, ymax)"""
        def contains(x, y):
            return (x > xmin) & (x < xmax) & (y > ymin) & (y < ymax)
        return cls(contains=contains, bbox=(xmin, xmax, ymin, ymax), margin=margin)

    @classmethod
    def annular_sector(cls, r_min: float, r_max: float, theta_min: float = -math.pi,
                       theta_max: float = math.pi, margin: Optional[float] = None) -> "Domain":
        """环形扇区 r ∈ (r_min, r_max), θ ∈ (theta_min, theta_max)"""
        if not 0.0 <= r_min < r_max:
            raise ValueError("需要 0 ≤ r_min < r_max")

        def contains(x, y):
            r = np.hypot(x, y)
            theta = np.arctan2(y, x)
            return (r > r_min) & (r < r_max) & (theta > theta_min) & (theta < theta_max)
        return cls(contains=contains, bbox=(-r_max, r_max, -r_max, r_max), margin=margin)

    @property
    def diagonal(self) -> float:
        xmin, xmax, ymin, ymax = self.bbox
        return math.hypot(xmax - xmin, ymax - ymin)

    def restrict_y(self, y_lo: float, y_hi: float) -> "Domain":
        """与水平带 (y_lo, y_hi) 求交"""
        xmin, xmax, ymin, ymax = self.bbox
        lo, hi = max(ymin, y_lo), min(ymax, y_hi)
        base = self.contains

        def contains(x, y):
            return np.asarray(base(x, y), dtype=bool) & (y > lo) & (y < hi)
        return Domain(contains=contains, bbox=(xmin, xmax, lo, hi), margin=self.margin)

    def inside(self, x: ArrayLike, y: ArrayLike, standoff: Optional[float] = None) -> np.ndarray:
        """点在区域内且沿坐标轴方向距边界至少 standoff"""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        s = self.margin if standoff is None else standoff
        xmin, xmax, ymin, ymax = self.bbox
        mask = (x > xmin + s) & (x < xmax - s) & (y > ymin + s) & (y < ymax - s)
        for ox, oy in ((0.0, 0.0), (s, 0.0), (-s, 0.0), (0.0, s), (0.0, -s)):
            mask &= np.asarray(self.contains(x + ox, y + oy), dtype=bool)
        return mask

    def contains_point(self, p: Point2, standoff: Optional[float] = None) -> bool:
        return bool(self.inside(np.array([p.x]), np.array([p.y]), standoff)[0])


class ScalarField(BaseModel):
    """平面标量场 (可带解析梯度)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: FieldFn = Field(description="向量化取值 (x, y) -> 数组")
    gradient: Optional[GradientFn] = Field(default=None, description="解析梯度")
    fd_step: float = Field(default=1e-5, gt=0, description="相对差分步长")
    name: str = Field(default="", description="便于日志的名称")

    def __call__(self, x: ArrayLike, y: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return _broadcast(self.value(x, y), np.broadcast_arrays(x, y)[0])

    def at(self, p: Point2) -> float:
        """单点取值, 非有限时报错"""
        val = float(self(p.x, p.y))
        if not math.isfinite(val):
            raise NonFiniteValue(f"场 {self.name or '<anonymous>'} 在 ({p.x}, {p.y}) 取值非有限")
        return val

    def fd_gradient_xy(self, x: ArrayLike, y: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        """中心差分, 每个方向步长 fd_step·max(1, |坐标|)"""
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        hx = self.fd_step * np.maximum(1.0, np.abs(x))
        hy = self.fd_step * np.maximum(1.0, np.abs(y))
        stencil = (self(x + hx, y), self(x - hx, y), self(x, y + hy), self(x, y - hy))
        if not all(np.all(np.isfinite(s)) for s in stencil):
            raise NonFiniteValue(f"场 {self.name or '<anonymous>'} 的差分模板出现非有限值")
        return (stencil[0] - stencil[1]) / (2.0 * hx), (stencil[2] - stencil[3]) / (2.0 * hy)

    def gradient_xy(self, x: ArrayLike, y: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        """向量化梯度"""
        if self.gradient is None:
            return self.fd_gradient_xy(x, y)
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        gx, gy = self.gradient(x, y)
        return _broadcast(gx, x), _broadcast(gy, x)


def grad(field: ScalarField, p: Point2) -> Vec2:
    """单点梯度: 解析优先, 否则中心差分"""
    gx, gy = field.gradient_xy(np.array([p.x]), np.array([p.y]))
    if not (math.isfinite(gx[0]) and math.isfinite(gy[0])):
        raise NonFiniteValue(f"场 {field.name or '<anonymous>'} 在 ({p.x}, {p.y}) 的梯度非有限")
    return Vec2(dx=float(gx[0]), dy=float(gy[0]))
