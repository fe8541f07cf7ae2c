#!/usr/bin/env python3
"""标定对构造模块: 幂密度族、对称密度与调和函数"""

from .power import power_density_pair, psi, psi_inverse
from .symmetric import (
    AntiderivativeTable,
    SymmetricDensitySpec,
    build_symmetric_pair,
    detect_validity_strip,
)
from .harmonic import (
    HolomorphicSpec,
    build_harmonic_pair,
    holomorphic_log,
    holomorphic_power2,
)

__all__ = [
    "power_density_pair",
    "psi",
    "psi_inverse",
    "AntiderivativeTable",
    "SymmetricDensitySpec",
    "build_symmetric_pair",
    "detect_validity_strip",
    "HolomorphicSpec",
    "build_harmonic_pair",
    "holomorphic_log",
    "holomorphic_power2",
]
