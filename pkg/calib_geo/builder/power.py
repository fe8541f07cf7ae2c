#!/usr/bin/env python3
"""
幂密度族
Ψ_λ(t) = t^(1-λ)/(1-λ) (λ ≠ 1), ln t (λ = 1);
g = Ψ_p(x) + Ψ_q(y), f = Ψ_{-p}(x) - Ψ_{-q}(y), ρ = √(x^{2p} + y^{2q})
"""

from typing import Any

import numpy as np

from calib_geo.calibration.pair import CalibrationPair
from calib_geo.errors import DomainOutsideQuadrant, NonPositiveArgument
from calib_geo.geometry.fields import Domain, ScalarField


def _psi_array(lam: float, t: np.ndarray) -> np.ndarray:
    """区域外 (t ≤ 0) 返回 nan, 交给调用方的有限性检查"""
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(t > 0, t, np.nan)
        if lam == 1.0:
            return np.log(t)
        return t ** (1.0 - lam) / (1.0 - lam)


def psi(lam: float, t: Any) -> Any:
    """Ψ_λ(t), t > 0"""
    arr = np.asarray(t, dtype=float)
    if np.any(~(arr > 0)):
        raise NonPositiveArgument(f"Ψ_λ 需要 t > 0, 实际为 {t!r}")
    out = _psi_array(lam, arr)
    return float(out) if out.ndim == 0 else out


def psi_inverse(lam: float, s: Any) -> Any:
    """Ψ_λ 的反函数"""
    arr = np.asarray(s, dtype=float)
    if lam == 1.0:
        out = np.exp(arr)
    else:
        base = (1.0 - lam) * arr
        if np.any(~(base > 0)):
            raise NonPositiveArgument(f"Ψ_{lam:g} 的值域不包含 {s!r}")
        out = base ** (1.0 / (1.0 - lam))
    return float(out) if out.ndim == 0 else out


def power_density_pair(p: float, q: float, domain: Domain) -> CalibrationPair:
    """第一象限内密度 √(x^{2p} + y^{2q}) 的标定对"""
    xmin, _, ymin, _ = domain.bbox
    if xmin < 0 or ymin < 0:
        raise DomainOutsideQuadrant(f"区域包围盒 {domain.bbox} 不在开第一象限内")

    def rho_value(x, y):
        return np.sqrt(x ** (2 * p) + y ** (2 * q))

    def rho_gradient(x, y):
        r = rho_value(x, y)
        return p * x ** (2 * p - 1) / r, q * y ** (2 * q - 1) / r

    g = ScalarField(
        value=lambda x, y: _psi_array(p, x) + _psi_array(q, y),
        gradient=lambda x, y: (x ** (-p), y ** (-q)),
        name=f"g_power({p:g},{q:g})",
    )
    f = ScalarField(
        value=lambda x, y: _psi_array(-p, x) - _psi_array(-q, y),
        gradient=lambda x, y: (x ** p, -(y ** q)),
        name=f"f_power({p:g},{q:g})",
    )
    rho = ScalarField(value=rho_value, gradient=rho_gradient, name=f"rho_power({p:g},{q:g})")
    return CalibrationPair(f=f, g=g, domain=domain, rho=rho)
