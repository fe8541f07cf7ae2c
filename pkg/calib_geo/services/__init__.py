#!/usr/bin/env python3
"""服务模块"""

from .verification_service import VerificationService

__all__ = ["VerificationService"]
