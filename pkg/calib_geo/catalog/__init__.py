#!/usr/bin/env python3
"""标定目录模块"""

from .catalog import (
    ENTRY_NAMES,
    CatalogEntry,
    astroid_entry,
    brachistochrone_entry,
    catalog_entries,
    conic_entry,
    entry_by_name,
    grim_reaper_entry,
    hyperbolic_semicircle_pair,
    log_spiral_entry,
    power_entry,
    semicircle_arc,
)

__all__ = [
    "ENTRY_NAMES",
    "CatalogEntry",
    "astroid_entry",
    "brachistochrone_entry",
    "catalog_entries",
    "conic_entry",
    "entry_by_name",
    "grim_reaper_entry",
    "hyperbolic_semicircle_pair",
    "log_spiral_entry",
    "power_entry",
    "semicircle_arc",
]
