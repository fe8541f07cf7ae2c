#!/usr/bin/env python3
"""
标定对 (f, g)
共享区域 Ω, 声明密度 rho (语义上等于 ‖∇f‖)
"""

from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.stats import qmc

from calib_geo.errors import EmptyDomain
from calib_geo.geometry.fields import Domain, ScalarField

# 每次向 Halton 序列追加的最少点数
_HALTON_BATCH = 256
_HALTON_ROUNDS = 64


class CalibrationPair(BaseModel):
    """标定对"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    f: ScalarField = Field(description="标定函数, 端点差给出下界")
    g: ScalarField = Field(description="等值线为测地线的函数")
    domain: Domain = Field(description="开区域 Ω")
    rho: ScalarField = Field(description="声明的长度密度")

    def scaled(self, kappa: float) -> "CalibrationPair":
        """f 与 rho 同乘 κ > 0, 下界与所有加权长度随之乘 κ"""
        if not kappa > 0:
            raise ValueError("缩放系数必须为正")
        f, rho = self.f, self.rho

        def f_grad(x, y):
            gx, gy = f.gradient_xy(x, y)
            return kappa * gx, kappa * gy

        return CalibrationPair(
            f=ScalarField(
                value=lambda x, y: kappa * f(x, y),
                gradient=f_grad,
                fd_step=f.fd_step,
                name=f"{kappa:g}*{f.name}",
            ),
            g=self.g,
            domain=self.domain,
            rho=ScalarField(
                value=lambda x, y: kappa * rho(x, y),
                gradient=None if rho.gradient is None else (
                    lambda x, y: tuple(kappa * c for c in rho.gradient_xy(x, y))
                ),
                fd_step=rho.fd_step,
                name=f"{kappa:g}*{rho.name}",
            ),
        )


def sample_interior(domain: Domain, n_samples: int, seed: int,
                    standoff: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    区域内的低差异采样点

    加扰 Halton 序列 (基 2, 3) 映射到包围盒, 再按包含判定与边界留距过滤;
    给定 seed 时结果确定。
    """
    if n_samples < 1:
        raise ValueError("采样点数至少为 1")
    xmin, xmax, ymin, ymax = domain.bbox
    sampler = qmc.Halton(d=2, scramble=True, seed=seed)
    xs, ys = [], []
    collected = 0
    for _ in range(_HALTON_ROUNDS):
        batch = qmc.scale(sampler.random(max(_HALTON_BATCH, 2 * (n_samples - collected))),
                          [xmin, ymin], [xmax, ymax])
        mask = domain.inside(batch[:, 0], batch[:, 1], standoff)
        xs.append(batch[mask, 0])
        ys.append(batch[mask, 1])
        collected += int(mask.sum())
        if collected >= n_samples:
            break
    if collected < n_samples:
        raise EmptyDomain(f"区域内只采样到 {collected} 个点 (需要 {n_samples})")
    return np.concatenate(xs)[:n_samples], np.concatenate(ys)[:n_samples]
