"""Desk-scale size guards, overridable through ``NARY_SIZE_GUARD``."""

from __future__ import annotations

import os


class SizeGuardError(RuntimeError):
    pass


def budget(default: int) -> int:
    raw = os.environ.get("NARY_SIZE_GUARD")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise SizeGuardError(f"NARY_SIZE_GUARD must be an integer, got {raw!r}") from None
    return default


def size_guard(size: int, default: int, what: str) -> None:
    limit = budget(default)
    if size > limit:
        raise SizeGuardError(f"{what}: size {size} exceeds guard {limit} (set NARY_SIZE_GUARD to override)")
