#!/usr/bin/env python3
"""
对称密度构造
密度 ρ = 1/v(y) 只依赖 y, 首积分常数 c 给出恰当微分
dg = dx + c·v/√(1-c²v²) dy,  df = -c dx + √(1-c²v²)/v dy
原函数由分段 Chebyshev 表插值, 锚定 G(y_ref) = F(y_ref) = 0
"""

import logging
import math
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import integrate
from scipy.interpolate import BarycentricInterpolator

from calib_geo.calibration.pair import CalibrationPair
from calib_geo.errors import NoConvergence, SingularDensity, ValidityViolated
from calib_geo.geometry.fields import Domain, ScalarField

logger = logging.getLogger(__name__)

SpeedFn = Callable[[np.ndarray], np.ndarray]

SCAN_STEP = 1e-3
BISECT_TOL = 1e-12
PANEL_NODES = 33
TABLE_TOL = 1e-10
MAX_PANELS = 2048

_GL16_X, _GL16_W = np.polynomial.legendre.leggauss(16)


class SymmetricDensitySpec(BaseModel):
    """只依赖 y 的密度 1/v(y) 及首积分常数 c"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    v: SpeedFn = Field(description="速度因子 v(y) > 0, 向量化")
    c: float = Field(description="首积分常数")
    y_ref: float = Field(description="原函数锚点纵坐标")
    domain: Domain = Field(description="区域, 构造时会收缩到有效带")


def _valid(v: SpeedFn, c: float, y: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        vv = np.asarray(v(np.asarray(y, dtype=float)), dtype=float)
        return np.isfinite(vv) & (vv > 0) & (1.0 - c * c * vv * vv > 0)


def _scan_edge(v: SpeedFn, c: float, y_ref: float, y_end: float,
               step: float, tol: float) -> float:
    """从 y_ref 向 y_end 扫描, 返回有效带在该侧的边界 (有效一侧)"""
    span = y_end - y_ref
    n = max(1, int(math.ceil(abs(span) / step)))
    ys = y_ref + np.sign(span) * step * np.arange(1, n + 1)
    ys[-1] = y_end
    ok = _valid(v, c, ys)
    if np.all(ok):
        return y_end
    k = int(np.flatnonzero(~ok)[0])
    good = y_ref if k == 0 else float(ys[k - 1])
    bad = float(ys[k])
    while abs(bad - good) > tol:
        mid = 0.5 * (good + bad)
        if _valid(v, c, np.array([mid]))[0]:
            good = mid
        else:
            bad = mid
    return good


def detect_validity_strip(v: SpeedFn, c: float, y_lo: float, y_hi: float,
                          y_ref: Optional[float] = None) -> Tuple[float, float]:
    """
    包含 y_ref 的有效带 {v > 0, 1 - c²v² > 0}

    以 1e-3 间距扫描, 再二分到 1e-12; 缺省 y_ref 取区间中点
    """
    if y_ref is None:
        y_ref = 0.5 * (y_lo + y_hi)
    if not y_lo < y_ref < y_hi:
        raise ValueError(f"y_ref={y_ref} 不在 ({y_lo}, {y_hi}) 内")
    if not _valid(v, c, np.array([y_ref]))[0]:
        with np.errstate(all="ignore"):
            v_ref = float(np.asarray(v(np.array([y_ref])))[0])
        if not (math.isfinite(v_ref) and v_ref > 0):
            raise SingularDensity(f"v({y_ref}) = {v_ref!r}")
        raise ValidityViolated(f"1 - c²v² ≤ 0 在 y_ref={y_ref}")
    lo = _scan_edge(v, c, y_ref, y_lo, SCAN_STEP, BISECT_TOL)
    hi = _scan_edge(v, c, y_ref, y_hi, SCAN_STEP, BISECT_TOL)
    return lo, hi


class _Panel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lo: float
    hi: float
    interp: BarycentricInterpolator
    total: float


class AntiderivativeTable:
    """
    ∫_a^y h(u) du 的分段 Chebyshev 插值

    每段 33 个第二类 Chebyshev 节点, 节点值由相邻节点间的 16 点 Gauss 和累加;
    与 scipy quad 在节点中点处比较, 误差超过 tol 就二分该段
    """

    def __init__(self, integrand: SpeedFn, a: float, b: float, anchor: float,
                 n_nodes: int = PANEL_NODES, tol: float = TABLE_TOL):
        if not a < anchor < b:
            raise ValidityViolated(f"锚点 {anchor} 不在插值区间 ({a}, {b}) 内")
        self._h = integrand
        self._n = n_nodes
        self._tol = tol
        panels: List[_Panel] = []
        stack = [(a, b)]
        min_width = 1e-13 * (b - a)
        while stack:
            lo, hi = stack.pop()
            panel, err = self._fit(lo, hi)
            if err <= tol:
                panels.append(panel)
                continue
            if hi - lo < min_width or len(panels) + len(stack) > MAX_PANELS:
                raise NoConvergence(f"原函数表在 [{lo:.6g}, {hi:.6g}] 上误差 {err:.3g} 无法降到 {tol:g}")
            mid = 0.5 * (lo + hi)
            stack.append((mid, hi))
            stack.append((lo, mid))
        panels.sort(key=lambda p: p.lo)
        self._panels = panels
        self._breaks = np.array([p.lo for p in panels] + [panels[-1].hi])
        self._offsets = np.concatenate([[0.0], np.cumsum([p.total for p in panels])])[:-1]
        self.a, self.b = a, b
        self._anchor_value = 0.0
        self._anchor_value = float(self(np.array([anchor]))[0])
        logger.debug("原函数表: [%g, %g] 上 %d 段", a, b, len(panels))

    @property
    def n_panels(self) -> int:
        return len(self._panels)

    def _nodes(self, lo: float, hi: float) -> np.ndarray:
        j = np.arange(self._n)
        return np.sort(0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos(np.pi * j / (self._n - 1)))

    def _fit(self, lo: float, hi: float) -> Tuple[_Panel, float]:
        nodes = self._nodes(lo, hi)
        left, right = nodes[:-1], nodes[1:]
        half = 0.5 * (right - left)
        u = (0.5 * (left + right))[:, None] + half[:, None] * _GL16_X[None, :]
        with np.errstate(all="ignore"):
            vals = np.asarray(self._h(u), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise ValidityViolated(f"被积函数在 [{lo:.6g}, {hi:.6g}] 上非有限")
        pieces = half * (vals @ _GL16_W)
        cumulative = np.concatenate([[0.0], np.cumsum(pieces)])
        interp = BarycentricInterpolator(nodes, cumulative)

        def h_scalar(t: float) -> float:
            return float(np.asarray(self._h(np.array([t])))[0])

        quad_kw = dict(epsabs=1e-14, epsrel=1e-13, limit=200)
        total_ref, _ = integrate.quad(h_scalar, lo, hi, **quad_kw)
        err = abs(cumulative[-1] - total_ref)
        m = self._n - 1
        for k in sorted({0, 1, 2, m // 4, m // 2, 3 * m // 4, m - 3, m - 2, m - 1}):
            mid = 0.5 * (nodes[k] + nodes[k + 1])
            ref = cumulative[k] + integrate.quad(h_scalar, nodes[k], mid, **quad_kw)[0]
            err = max(err, abs(float(interp(mid)) - ref))
        return _Panel(lo=lo, hi=hi, interp=interp, total=float(cumulative[-1])), err

    def __call__(self, y: np.ndarray) -> np.ndarray:
        """区间外返回 nan"""
        y = np.asarray(y, dtype=float)
        out = np.full(y.shape, np.nan)
        inside = (y >= self.a) & (y <= self.b)
        if not np.any(inside):
            return out
        idx = np.clip(np.searchsorted(self._breaks, y, side="right") - 1, 0, len(self._panels) - 1)
        for k in np.unique(idx[inside]):
            sel = inside & (idx == k)
            out[sel] = self._offsets[k] + self._panels[k].interp(y[sel])
        return out - self._anchor_value


def build_symmetric_pair(spec: SymmetricDensitySpec) -> CalibrationPair:
    """
    由对称密度构造标定对

    g = x + G(y), f = -c·x + F(y), ρ = 1/v; 区域收缩到包含 y_ref 的有效带,
    原函数表覆盖有效带内侧半个边界留距
    """
    v, c = spec.v, float(spec.c)
    _, _, ymin, ymax = spec.domain.bbox
    lo, hi = detect_validity_strip(v, c, ymin, ymax, spec.y_ref)
    domain = spec.domain.restrict_y(lo, hi)
    pad = 0.5 * domain.margin
    a, b = lo + pad, hi - pad
    logger.info("有效带 y ∈ (%.12g, %.12g), c=%g", lo, hi, c)

    def slope_g(y):
        vv = v(y)
        return c * vv / np.sqrt(1.0 - c * c * vv * vv)

    def slope_f(y):
        vv = v(y)
        return np.sqrt(1.0 - c * c * vv * vv) / vv

    F = AntiderivativeTable(slope_f, a, b, spec.y_ref)
    if c == 0.0:
        def G(y):
            y = np.asarray(y, dtype=float)
            return np.where((y >= a) & (y <= b), 0.0, np.nan)
    else:
        G = AntiderivativeTable(slope_g, a, b, spec.y_ref)

    g = ScalarField(
        value=lambda x, y: x + G(y),
        gradient=lambda x, y: (np.ones_like(x), slope_g(y)),
        name=f"g_symmetric(c={c:g})",
    )
    f = ScalarField(
        value=lambda x, y: -c * x + F(y),
        gradient=lambda x, y: (np.full_like(x, -c), slope_f(y)),
        name=f"f_symmetric(c={c:g})",
    )
    rho = ScalarField(value=lambda x, y: 1.0 / v(y), name="rho_symmetric")
    return CalibrationPair(f=f, g=g, domain=domain, rho=rho)
