#!/usr/bin/env python3
"""
调和构造: f + ig = e^{iα}(p + iq)
p + iq 全纯时 ∇f ⊥ ∇g 且 ‖∇f‖ = ‖∇g‖ = ‖∇p‖
"""

import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from calib_geo.calibration.pair import CalibrationPair, sample_interior
from calib_geo.calibration.verification import check_density, check_orthogonality
from calib_geo.errors import CauchyRiemannViolated, VanishingGradient
from calib_geo.geometry.fields import Domain, ScalarField

logger = logging.getLogger(__name__)

CR_TOL = 1e-8
GRADIENT_FLOOR = 1e-12


class HolomorphicSpec(BaseModel):
    """全纯函数的实部 p、虚部 q 与旋转角 α"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    p: ScalarField = Field(description="实部")
    q: ScalarField = Field(description="虚部")
    alpha: float = Field(default=0.0, description="旋转角 (弧度)")


def holomorphic_power2(alpha: float = 0.0) -> HolomorphicSpec:
    """z² = (x² - y²) + i·2xy"""
    return HolomorphicSpec(
        p=ScalarField(value=lambda x, y: x * x - y * y,
                      gradient=lambda x, y: (2.0 * x, -2.0 * y), name="re(z^2)"),
        q=ScalarField(value=lambda x, y: 2.0 * x * y,
                      gradient=lambda x, y: (2.0 * y, 2.0 * x), name="im(z^2)"),
        alpha=alpha,
    )


def holomorphic_log(r0: float = 1.0, theta0: float = 0.0, alpha: float = 0.0) -> HolomorphicSpec:
    """ln(z/r0) - iθ0 = ln(r/r0) + i(θ - θ0), 辐角取主值"""
    if not r0 > 0:
        raise ValueError("r0 必须为正")

    def grad_p(x, y):
        r2 = x * x + y * y
        return x / r2, y / r2

    def grad_q(x, y):
        r2 = x * x + y * y
        return -y / r2, x / r2

    return HolomorphicSpec(
        p=ScalarField(value=lambda x, y: np.log(np.hypot(x, y) / r0), gradient=grad_p, name="ln(r/r0)"),
        q=ScalarField(value=lambda x, y: np.arctan2(y, x) - theta0, gradient=grad_q, name="theta-theta0"),
        alpha=alpha,
    )


def build_harmonic_pair(spec: HolomorphicSpec, domain: Domain,
                        n_samples: int = 200, seed: int = 0) -> CalibrationPair:
    """按旋转角组合 p, q; 先在采样点上检查 Cauchy-Riemann 方程"""
    p, q = spec.p, spec.q
    x, y = sample_interior(domain, n_samples, seed)
    px, py = p.gradient_xy(x, y)
    qx, qy = q.gradient_xy(x, y)
    norm = np.hypot(px, py)
    if np.any(norm < GRADIENT_FLOOR):
        idx = int(np.argmin(norm))
        raise VanishingGradient(f"‖∇p‖ 在 ({x[idx]:.6g}, {y[idx]:.6g}) 处消失")
    residual = float(np.max(np.maximum(np.abs(px - qy), np.abs(py + qx)) / norm))
    if residual > CR_TOL:
        raise CauchyRiemannViolated(f"Cauchy-Riemann 残差 {residual:.3g} 超过 {CR_TOL:g}")

    ca, sa = math.cos(spec.alpha), math.sin(spec.alpha)

    def f_grad(x, y):
        (px, py), (qx, qy) = p.gradient_xy(x, y), q.gradient_xy(x, y)
        return ca * px - sa * qx, ca * py - sa * qy

    def g_grad(x, y):
        (px, py), (qx, qy) = p.gradient_xy(x, y), q.gradient_xy(x, y)
        return sa * px + ca * qx, sa * py + ca * qy

    def rho_value(x, y):
        px, py = p.gradient_xy(x, y)
        return np.hypot(px, py)

    pair = CalibrationPair(
        f=ScalarField(value=lambda x, y: ca * p(x, y) - sa * q(x, y), gradient=f_grad,
                      name=f"f_harmonic(alpha={spec.alpha:g})"),
        g=ScalarField(value=lambda x, y: sa * p(x, y) + ca * q(x, y), gradient=g_grad,
                      name=f"g_harmonic(alpha={spec.alpha:g})"),
        domain=domain,
        rho=ScalarField(value=rho_value, name="rho_harmonic"),
    )
    orth = check_orthogonality(pair, n_samples, seed)
    dens = check_density(pair, n_samples, seed)
    if orth > CR_TOL or dens > CR_TOL:
        raise CauchyRiemannViolated(f"组合后的标定对残差过大: 正交 {orth:.3g}, 密度 {dens:.3g}")
    logger.debug("调和标定对: α=%g, CR 残差 %.3g", spec.alpha, residual)
    return pair
