#!/usr/bin/env python3
"""
曲线定义
参数曲线 (向量化映射 t -> (x, y)) 与有序折线, 以及弧长重采样和 CSV 读写
"""

from pathlib import Path
from typing import Any, Callable, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.spatial.distance import directed_hausdorff

from calib_geo.errors import DegenerateCurve
from calib_geo.models.models import Point2

CurveMap = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]

# 参数导数的相对差分步长
PARAM_FD_STEP = 1e-6
# 重采样时参数表的最少点数
RESAMPLE_TABLE_SIZE = 4097


class ParametricCurve(BaseModel):
    """参数曲线 X(t), t 从 t0 到 t1 (允许 t0 > t1 表示反向)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    map: CurveMap = Field(description="向量化映射 t -> (x, y)")
    t0: float = Field(allow_inf_nan=False)
    t1: float = Field(allow_inf_nan=False)

    @model_validator(mode="after")
    def _check_finite(self) -> "ParametricCurve":
        if self.t0 == self.t1:
            raise ValueError("参数区间为空")
        x, y = self.evaluate(np.linspace(self.t0, self.t1, 65))
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("参数映射在 [t0, t1] 上非有限")
        return self

    def evaluate(self, t: Any) -> Tuple[np.ndarray, np.ndarray]:
        t = np.asarray(t, dtype=float)
        x, y = self.map(t)
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float), t)[:2]
        return x, y

    def derivative(self, t: Any) -> Tuple[np.ndarray, np.ndarray]:
        """中心差分, 步长 (t1-t0)·1e-6, 模板截断在参数区间内"""
        t = np.asarray(t, dtype=float)
        lo, hi = min(self.t0, self.t1), max(self.t0, self.t1)
        h = abs(self.t1 - self.t0) * PARAM_FD_STEP
        tp = np.minimum(t + h, hi)
        tm = np.maximum(t - h, lo)
        xp, yp = self.evaluate(tp)
        xm, ym = self.evaluate(tm)
        span = tp - tm
        return (xp - xm) / span, (yp - ym) / span

    @property
    def start(self) -> Point2:
        x, y = self.evaluate(self.t0)
        return Point2.of(x, y)

    @property
    def end(self) -> Point2:
        x, y = self.evaluate(self.t1)
        return Point2.of(x, y)


class Polyline(BaseModel):
    """有序折线, 至少两个点, 相邻点不重合"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    points: np.ndarray = Field(description="形如 (n, 2) 的点列")

    @field_validator("points", mode="before")
    @classmethod
    def _as_points(cls, value: Any) -> np.ndarray:
        pts = np.array(value, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("折线点列必须是 (n, 2) 形状")
        if pts.shape[0] < 2:
            raise ValueError("折线至少需要两个点")
        if not np.all(np.isfinite(pts)):
            raise ValueError("折线包含非有限坐标")
        if np.any(np.all(np.diff(pts, axis=0) == 0.0, axis=1)):
            raise ValueError("折线存在相邻重合点")
        pts.setflags(write=False)
        return pts

    @classmethod
    def from_xy(cls, x: Any, y: Any) -> "Polyline":
        return cls(points=np.column_stack([np.asarray(x, dtype=float), np.asarray(y, dtype=float)]))

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 1]

    @property
    def start(self) -> Point2:
        return Point2.of(*self.points[0])

    @property
    def end(self) -> Point2:
        return Point2.of(*self.points[-1])

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def length(self) -> float:
        """欧氏长度"""
        return float(np.sum(np.hypot(*np.diff(self.points, axis=0).T)))


Curve = Union[ParametricCurve, Polyline]


def sample_points(curve: Curve, n: int = 257) -> Tuple[np.ndarray, np.ndarray]:
    """曲线上的检查点: 参数曲线均匀取 n 个参数, 折线取全部顶点"""
    if isinstance(curve, Polyline):
        return curve.x, curve.y
    return curve.evaluate(np.linspace(curve.t0, curve.t1, n))


def resample_arclength(curve: Curve, n: int) -> Polyline:
    """按欧氏弧长近似等距重采样为 n 个点, 端点不变"""
    if n < 2:
        raise ValueError("重采样点数至少为 2")
    if isinstance(curve, Polyline):
        px, py = curve.x, curve.y
        params = None
    else:
        params = np.linspace(curve.t0, curve.t1, max(RESAMPLE_TABLE_SIZE, 40 * n))
        px, py = curve.evaluate(params)
    cumulative = np.concatenate([[0.0], np.cumsum(np.hypot(np.diff(px), np.diff(py)))])
    total = cumulative[-1]
    if not total > 0.0:
        raise DegenerateCurve("曲线欧氏长度为 0")
    targets = np.linspace(0.0, total, n)
    if params is None:
        x = np.interp(targets, cumulative, px)
        y = np.interp(targets, cumulative, py)
        x[0], y[0], x[-1], y[-1] = px[0], py[0], px[-1], py[-1]
    else:
        t = np.interp(targets, cumulative, params)
        t[0], t[-1] = curve.t0, curve.t1
        x, y = curve.evaluate(t)
    return Polyline.from_xy(x, y)


def write_polyline_csv(curve: Polyline, path: Union[str, Path]) -> None:
    """写出 CSV: 表头 x,y, 每行一个点 (17 位有效数字)"""
    np.savetxt(path, curve.points, delimiter=",", header="x,y", comments="", fmt="%.17g")


def read_polyline_csv(path: Union[str, Path]) -> Polyline:
    """读取 CSV 折线"""
    with open(path, "r", encoding="utf-8") as handle:
        header = handle.readline().strip().replace(" ", "")
    if header != "x,y":
        raise ValueError(f"CSV 表头必须是 'x,y', 实际为 '{header}'")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return Polyline(points=data)


def hausdorff_distance(a: Polyline, b: Polyline) -> float:
    """两条折线顶点集之间的 Hausdorff 距离"""
    return max(directed_hausdorff(a.points, b.points)[0], directed_hausdorff(b.points, a.points)[0])
