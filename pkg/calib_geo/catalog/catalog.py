#!/usr/bin/env python3
"""
标定目录
每个条目: 标定对 + 参考极小曲线 (位于 g 的等值线上) + 可选闭式长度
"""

import logging
import math
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from calib_geo.builder.harmonic import build_harmonic_pair, holomorphic_log
from calib_geo.builder.power import power_density_pair, psi, psi_inverse
from calib_geo.calibration.pair import CalibrationPair
from calib_geo.errors import UnknownEntry
from calib_geo.geometry.curves import Curve, ParametricCurve, sample_points
from calib_geo.geometry.fields import Domain, ScalarField
from calib_geo.geometry.quadrature import weighted_length
from calib_geo.models.models import Point2, Tolerances

logger = logging.getLogger(__name__)

ENTRY_NAMES = (
    "astroid",
    "power",
    "brachistochrone",
    "conic-eps-0",
    "conic-ellipse",
    "conic-parabola",
    "conic-hyperbola",
    "grim-reaper",
    "log-spiral",
)

ENDPOINT_TOL = 1e-9
ORACLE_REL_TOL = 1e-8
LEVEL_CHECK_POINTS = 1025


class CatalogEntry(BaseModel):
    """目录条目, 构造时自检"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = Field(description="条目名 (CLI 使用)")
    pair: CalibrationPair = Field(description="标定对")
    minimizer: Curve = Field(description="参考极小曲线")
    default_endpoints: Tuple[Point2, Point2] = Field(description="默认端点")
    oracle_length: Optional[float] = Field(default=None, description="闭式加权长度")
    notes: str = Field(default="", description="曲线说明")

    @model_validator(mode="after")
    def _check_invariants(self) -> "CatalogEntry":
        p1, p2 = self.default_endpoints
        gap = max(p1.distance(self.minimizer.start), p2.distance(self.minimizer.end))
        if gap > ENDPOINT_TOL:
            raise ValueError(f"{self.name}: 极小曲线端点与默认端点相差 {gap:.3g}")
        g0 = self.pair.g.at(p1)
        x, y = sample_points(self.minimizer, LEVEL_CHECK_POINTS)
        drift = float(np.max(np.abs(self.pair.g(x, y) - g0)))
        if not drift <= Tolerances().level_tolerance(g0):
            raise ValueError(f"{self.name}: 极小曲线偏离等值线 {drift:.3g}")
        if self.oracle_length is not None:
            length = weighted_length(self.minimizer, self.pair.rho)
            if abs(length - self.oracle_length) > ORACLE_REL_TOL * self.oracle_length:
                raise ValueError(f"{self.name}: 加权长度 {length!r} 与闭式值 {self.oracle_length!r} 不符")
        return self


def _entry(name: str, pair: CalibrationPair, minimizer: ParametricCurve,
           oracle_length: Optional[float], notes: str) -> CatalogEntry:
    return CatalogEntry(
        name=name,
        pair=pair,
        minimizer=minimizer,
        default_endpoints=(minimizer.start, minimizer.end),
        oracle_length=oracle_length,
        notes=notes,
    )


def astroid_entry(lam: float = 1.0) -> CatalogEntry:
    """星形线族 x^{2/3} + y^{2/3} = λ, 密度 √(x^{2/3} + y^{2/3})"""
    if not lam > 0:
        raise ValueError("λ 必须为正")
    a = lam ** 1.5

    def rho_value(x, y):
        return np.sqrt(x ** (2 / 3) + y ** (2 / 3))

    def rho_gradient(x, y):
        r = rho_value(x, y)
        return x ** (-1 / 3) / (3 * r), y ** (-1 / 3) / (3 * r)

    pair = CalibrationPair(
        f=ScalarField(value=lambda x, y: 0.75 * (x ** (4 / 3) - y ** (4 / 3)),
                      gradient=lambda x, y: (x ** (1 / 3), -(y ** (1 / 3))), name="f_astroid"),
        g=ScalarField(value=lambda x, y: x ** (2 / 3) + y ** (2 / 3),
                      gradient=lambda x, y: (2 / 3 * x ** (-1 / 3), 2 / 3 * y ** (-1 / 3)), name="g_astroid"),
        domain=Domain.box(0.0, 2.0 * a, 0.0, 2.0 * a),
        rho=ScalarField(value=rho_value, gradient=rho_gradient, name="rho_astroid"),
    )
    minimizer = ParametricCurve(
        map=lambda t: (a * np.cos(t) ** 3, a * np.sin(t) ** 3),
        t0=math.pi / 6,
        t1=math.pi / 3,
    )
    return _entry("astroid", pair, minimizer, 0.75 * lam * lam,
                  f"星形线 x^(2/3)+y^(2/3)={lam:g}, t ∈ [π/6, π/3]")


def power_entry(p: float = 1.0, q: float = 2.0, level: float = -1.0,
                y_range: Tuple[float, float] = (0.5, 2.0)) -> CatalogEntry:
    """幂密度族的等值线 Ψ_p(x) + Ψ_q(y) = level, 以 y 为参数"""
    def curve_map(t):
        return psi_inverse(p, level - psi(q, t)), t

    minimizer = ParametricCurve(map=curve_map, t0=y_range[0], t1=y_range[1])
    x, y = sample_points(minimizer)
    domain = Domain.box(0.0, 1.5 * float(np.max(x)), 0.0, 1.5 * float(np.max(y)))
    pair = power_density_pair(p, q, domain)
    return _entry("power", pair, minimizer, None,
                  f"密度 √(x^{2 * p:g} + y^{2 * q:g}) 的等值线 g = {level:g}")


def brachistochrone_entry(rho_cyc: float = 1.0) -> CatalogEntry:
    """最速降线: 密度 1/√(-y) 下的摆线 (t - sin t, -(1 - cos t))·ρ_cyc"""
    if not rho_cyc > 0:
        raise ValueError("ρ_cyc 必须为正")
    r = rho_cyc
    s = 1.0 / math.sqrt(2.0 * r)

    def g_value(x, y):
        u = 1.0 + y / r
        return x - r * np.arccos(u) + r * np.sqrt(1.0 - u * u)

    def f_value(x, y):
        u = 1.0 + y / r
        return s * (-x + r * np.arcsin(u) - r * np.sqrt(1.0 - u * u))

    pair = CalibrationPair(
        f=ScalarField(value=f_value,
                      gradient=lambda x, y: (np.full_like(x, -s), s * np.sqrt((2.0 * r + y) / -y)),
                      name="f_brachistochrone"),
        g=ScalarField(value=g_value,
                      gradient=lambda x, y: (np.ones_like(x), np.sqrt(-y / (2.0 * r + y))),
                      name="g_brachistochrone"),
        domain=Domain.box(-r, 4.0 * r, -2.0 * r, 0.0),
        rho=ScalarField(value=lambda x, y: 1.0 / np.sqrt(-y),
                        gradient=lambda x, y: (np.zeros_like(x), 0.5 * (-y) ** -1.5),
                        name="rho_brachistochrone"),
    )
    minimizer = ParametricCurve(
        map=lambda t: (r * (t - np.sin(t)), -r * (1.0 - np.cos(t))),
        t0=0.1,
        t1=math.pi - 0.1,
    )
    return _entry("brachistochrone", pair, minimizer, math.sqrt(2.0 * r) * (math.pi - 0.2),
                  "半拱摆线, 两端各留参数距离 0.1 避开尖点与底边")


def _conic_rho(eps: float) -> ScalarField:
    e2 = eps * eps
    return ScalarField(
        value=lambda x, y: np.sqrt(e2 + 1.0 / (y * y)),
        gradient=lambda x, y: (np.zeros_like(x), -1.0 / (y ** 3 * np.sqrt(e2 + 1.0 / (y * y)))),
        name=f"rho_conic({eps:g})",
    )


def _hyperbolic_quarter_circle(x0: float, rho0: float) -> CatalogEntry:
    def w(y):
        return np.sqrt(1.0 - (y / rho0) ** 2)

    pair = CalibrationPair(
        f=ScalarField(value=lambda x, y: -x / rho0 + w(y) - np.log((1.0 + w(y)) * rho0 / y),
                      gradient=lambda x, y: (np.full_like(x, -1.0 / rho0), w(y) / y),
                      name="f_conic(0)"),
        g=ScalarField(value=lambda x, y: x - x0 - rho0 * w(y),
                      gradient=lambda x, y: (np.ones_like(x), y / (rho0 * w(y))),
                      name="g_conic(0)"),
        domain=Domain.box(x0 - rho0, x0 + 2.0 * rho0, 0.0, rho0),
        rho=_conic_rho(0.0),
    )
    minimizer = ParametricCurve(
        map=lambda t: (x0 + rho0 * np.cos(t), rho0 * np.sin(t)),
        t0=math.pi / 6,
        t1=math.pi / 3,
    )
    p1, p2 = minimizer.start, minimizer.end
    d2 = (p2.x - p1.x) ** 2 + (p2.y - p1.y) ** 2
    oracle = math.acosh(1.0 + d2 / (2.0 * p1.y * p2.y))
    return _entry("conic-eps-0", pair, minimizer, oracle,
                  f"双曲半平面中的四分之一圆 (x-{x0:g})²+y²={rho0:g}², 焦点形式 1-εx = √(x²+y²) 取 ε=0")


def _conic_parabola(x0: float) -> CatalogEntry:
    pair = CalibrationPair(
        f=ScalarField(value=lambda x, y: -x + np.log(y),
                      gradient=lambda x, y: (np.full_like(x, -1.0), 1.0 / y), name="f_conic(1)"),
        g=ScalarField(value=lambda x, y: x - x0 + 0.5 * y * y,
                      gradient=lambda x, y: (np.ones_like(x), y), name="g_conic(1)"),
        domain=Domain.box(x0 - 4.0, x0 + 2.0, 0.0, 4.0),
        rho=_conic_rho(1.0),
    )
    minimizer = ParametricCurve(map=lambda t: (x0 - 0.5 * t * t, t), t0=0.5, t1=2.0)
    oracle = (0.5 * 2.0 ** 2 + math.log(2.0)) - (0.5 * 0.5 ** 2 + math.log(0.5))
    return _entry("conic-parabola", pair, minimizer, oracle,
                  f"抛物线 x = {x0:g} - y²/2; 焦点形式 2x + y² = 1")


def _conic_central(eps: float, x0: float) -> CatalogEntry:
    """ε ≠ 0, 1: 椭圆 (k > 0) 或双曲线一支 (k < 0), k = 1 - ε²"""
    k = 1.0 - eps * eps
    sqrt_abs_k = math.sqrt(abs(k))

    def w(y):
        return np.sqrt(1.0 - k * y * y)

    # artanh(W) = ln((1+W)/(√|k|·y)); ε > 1 时 W > 1, 取实分支
    def f_value(x, y):
        ww = w(y)
        return -x + ww - np.log((1.0 + ww) / (sqrt_abs_k * y))

    minimizer = ParametricCurve(map=lambda t: (x0 + w(t) / k, t),
                                t0=0.3 if k > 0 else 0.5, t1=0.9 if k > 0 else 1.5)
    xs, ys = sample_points(minimizer)
    y_cap = 1.0 / math.sqrt(k) if k > 0 else max(4.0, 2.0 * float(np.max(ys)))
    domain = Domain.box(float(np.min(xs)) - 1.0, float(np.max(xs)) + 1.0, 0.0, y_cap)
    pair = CalibrationPair(
        f=ScalarField(value=f_value, gradient=lambda x, y: (np.full_like(x, -1.0), w(y) / y),
                      name=f"f_conic({eps:g})"),
        g=ScalarField(value=lambda x, y: k * (x - x0) - w(y),
                      gradient=lambda x, y: (np.full_like(x, k), k * y / w(y)),
                      name=f"g_conic({eps:g})"),
        domain=domain,
        rho=_conic_rho(eps),
    )
    if k > 0:
        name, shape = "conic-ellipse", "椭圆"
    else:
        name, shape = "conic-hyperbola", "双曲线一支"
    return _entry(name, pair, minimizer, None,
                  f"{shape} (1-ε²)²(x-{x0:g})² + (1-ε²)y² = 1, ε={eps:g}; "
                  f"由焦点形式 1-εx = √(x²+y²) 平移 ε/(1-ε²) 得到")


def conic_entry(eps: float, x0: float = 0.0, rho0: float = 1.0) -> CatalogEntry:
    """离心率 ε ≥ 0 的圆锥曲线, 密度 √(ε² + 1/y²); ρ0 只用于 ε = 0"""
    if eps < 0:
        raise ValueError("离心率必须非负")
    if eps == 0.0:
        if not rho0 > 0:
            raise ValueError("ρ0 必须为正")
        return _hyperbolic_quarter_circle(x0, rho0)
    if rho0 != 1.0:
        raise ValueError("ρ0 只对 ε = 0 有意义")
    if eps == 1.0:
        return _conic_parabola(x0)
    return _conic_central(eps, x0)


def grim_reaper_entry(y_cap: float = 1.0) -> CatalogEntry:
    """死神曲线 y = -ln cos x 的右半支, 密度 e^y"""
    if not y_cap > 0:
        raise ValueError("y_cap 必须为正")

    # arccos(e^{-y}) = arctan √(e^{2y} - 1)
    def angle(y):
        return np.arctan(np.sqrt(np.expm1(2.0 * y)))

    pair = CalibrationPair(
        f=ScalarField(value=lambda x, y: x + np.sqrt(np.expm1(2.0 * y)) - angle(y),
                      gradient=lambda x, y: (np.ones_like(x), np.sqrt(np.expm1(2.0 * y))),
                      name="f_grim_reaper"),
        g=ScalarField(value=lambda x, y: x - angle(y),
                      gradient=lambda x, y: (np.ones_like(x), -1.0 / np.sqrt(np.expm1(2.0 * y))),
                      name="g_grim_reaper"),
        domain=Domain.box(0.0, math.pi / 2, 0.0, y_cap),
        rho=ScalarField(value=lambda x, y: np.exp(y),
                        gradient=lambda x, y: (np.zeros_like(x), np.exp(y)), name="rho_grim_reaper"),
    )
    minimizer = ParametricCurve(map=lambda t: (t, -np.log(np.cos(t))), t0=0.1, t1=math.pi / 4)
    return _entry("grim-reaper", pair, minimizer, 1.0 - math.tan(0.1),
                  "曲线缩短流的平移孤立子 y = -ln cos x, x ∈ [0.1, π/4]")


def log_spiral_entry(r0: float = 1.0, theta0: float = 0.0, alpha: float = math.pi / 4,
                     half_turn: float = 1.0) -> CatalogEntry:
    """对数螺线 r = r0·e^{λ(θ-θ0)}, λ = -cot α, 密度 1/r"""
    if not 0.0 < alpha < math.pi:
        raise ValueError("α 必须在 (0, π) 内")
    t0, t1 = theta0 - half_turn, theta0 + half_turn
    if not -math.pi < t0 < t1 < math.pi:
        raise ValueError("螺线段的辐角必须在 (-π, π) 内")
    lam = -1.0 / math.tan(alpha)
    radii = r0 * np.exp(lam * (np.array([t0, t1]) - theta0))
    # 缺省参数下为 r ∈ (0.2, 5)·r0, 螺线段始终在环内
    r_lo = min(0.2 * r0, 0.9 * float(radii.min()))
    r_hi = max(5.0 * r0, 1.1 * float(radii.max()))
    domain = Domain.annular_sector(r_lo, r_hi)
    pair = build_harmonic_pair(holomorphic_log(r0, theta0, alpha), domain)

    def curve_map(t):
        r = r0 * np.exp(lam * (t - theta0))
        return r * np.cos(t), r * np.sin(t)

    minimizer = ParametricCurve(map=curve_map, t0=t0, t1=t1)
    return _entry("log-spiral", pair, minimizer, math.sqrt(1.0 + lam * lam) * (t1 - t0),
                  f"对数螺线 λ = -cot α = {lam:.6g}, 由 ln(r/r0) + i(θ-θ0) 旋转得到")


def hyperbolic_semicircle_pair(x0: float, domain: Optional[Domain] = None) -> CalibrationPair:
    """
    双曲半平面中以 (x0, 0) 为圆心的整个半圆族

    g = (x-x0)² + y², f = ln(y/(r + x - x0)), r = √g; 密度 1/y
    """
    def f_value(x, y):
        u = x - x0
        r = np.hypot(u, y)
        # u < 0 时 r + u = y²/(r - u)
        return np.where(u >= 0, np.log(y / (r + np.abs(u))), np.log((r + np.abs(u)) / y))

    def f_gradient(x, y):
        u = x - x0
        r = np.hypot(u, y)
        return -1.0 / r, u / (y * r)

    return CalibrationPair(
        f=ScalarField(value=f_value, gradient=f_gradient, name="f_semicircle"),
        g=ScalarField(value=lambda x, y: (x - x0) ** 2 + y ** 2,
                      gradient=lambda x, y: (2.0 * (x - x0), 2.0 * y), name="g_semicircle"),
        domain=domain or Domain.box(x0 - 4.0, x0 + 4.0, 0.0, 4.0),
        rho=ScalarField(value=lambda x, y: 1.0 / y,
                        gradient=lambda x, y: (np.zeros_like(x), -1.0 / (y * y)), name="rho_hyperbolic"),
    )


def semicircle_arc(x0: float, radius: float, phi_start: float, phi_end: float) -> ParametricCurve:
    """半圆 (x0 + R cos φ, R sin φ) 上的一段, φ ∈ (0, π)"""
    return ParametricCurve(
        map=lambda t: (x0 + radius * np.cos(t), radius * np.sin(t)),
        t0=phi_start,
        t1=phi_end,
    )


@lru_cache(maxsize=1)
def _default_entries() -> Tuple[CatalogEntry, ...]:
    entries = (
        astroid_entry(),
        power_entry(),
        brachistochrone_entry(),
        conic_entry(0.0),
        conic_entry(0.5),
        conic_entry(1.0),
        conic_entry(2.0),
        grim_reaper_entry(),
        log_spiral_entry(),
    )
    logger.debug("目录已构造: %s", ", ".join(e.name for e in entries))
    return entries


def catalog_entries() -> List[CatalogEntry]:
    """全部 9 个默认条目 (按固定顺序)"""
    return list(_default_entries())


def entry_by_name(name: str) -> CatalogEntry:
    """按名称精确查找 (区分大小写)"""
    for entry in _default_entries():
        if entry.name == name:
            return entry
    raise UnknownEntry(name, list(ENTRY_NAMES))
