#!/usr/bin/env python3
"""命令行工具模块"""

from .verification import list_entries, verify_entry
from .curves import curve_length, trace_entry
from .plotting import plot_entry

__all__ = [
    "list_entries",
    "verify_entry",
    "curve_length",
    "trace_entry",
    "plot_entry",
]
