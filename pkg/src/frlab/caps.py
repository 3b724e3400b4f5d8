"""Size caps for group constructions and searches.

Every potentially explosive operation checks a cap and fails loudly with
OrderCapExceeded instead of degrading.  Caps are configuration: they can be
overridden per-process through the FRLAB_CAPS environment variable
(e.g. ``FRLAB_CAPS="table_order=4000,subgroup_enum=500"``) or temporarily
through the :func:`scoped` context manager.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, replace

from .errors import OrderCapExceeded


@dataclass(frozen=True)
class Caps:
    table_order: int = 2000  # Cayley table built from permutations / files
    construction: int = 20000  # direct/semidirect/wreath product results
    subgroup_enum: int = 400  # full subgroup-lattice enumeration
    automorphism: int = 120  # brute-force Aut(G) search
    abelian_section: int = 4096  # abelian chief factor size for section scans
    central_semidirect: int = 2400  # semidirect route inside centrality tests

    def check(self, what: str, needed: int, cap_name: str) -> None:
        cap = getattr(self, cap_name)
        if needed > cap:
            raise OrderCapExceeded(what, needed, cap)


def _from_env(base: Caps) -> Caps:
    raw = os.environ.get("FRLAB_CAPS", "")
    if not raw.strip():
        return base
    overrides = {}
    for piece in raw.split(","):
        piece = piece.strip()
        if not piece:
            continue
        key, _, value = piece.partition("=")
        key = key.strip()
        if key not in Caps.__dataclass_fields__:
            raise ValueError(f"unknown cap {key!r} in FRLAB_CAPS")
        overrides[key] = int(value)
    return replace(base, **overrides)


_current = _from_env(Caps())


def current() -> Caps:
    return _current


def set_caps(caps: Caps) -> None:
    global _current
    _current = caps


@contextmanager
def scoped(**overrides):
    """Temporarily override caps, e.g. ``with caps.scoped(subgroup_enum=50): ...``"""
    global _current
    saved = _current
    _current = replace(saved, **overrides)
    try:
        yield _current
    finally:
        _current = saved


__all__ = ["Caps", "current", "set_caps", "scoped", "OrderCapExceeded"]
