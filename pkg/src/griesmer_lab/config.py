"""Enumeration caps.

Every cap can be overridden through an environment variable; the values are
read at call time so tests and the CLI can adjust them without reloading.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, replace

MAX_Q = 16


@dataclass(frozen=True)
class Caps:
    max_qk: int = 2**26
    max_subspaces: int = 10**6
    # bits held by the per-hyperplane column bitsets used for subcode enumeration
    max_mask_bits: int = 2**31
    # helper lookups allowed in one repair-set search
    max_locality_work: int = 5 * 10**7

    @classmethod
    def from_env(cls) -> "Caps":
        caps = cls()
        env = {
            "GRIESMER_LAB_MAX_QK": "max_qk",
            "GRIESMER_LAB_MAX_SUBSPACES": "max_subspaces",
            "GRIESMER_LAB_MAX_MASK_BITS": "max_mask_bits",
            "GRIESMER_LAB_MAX_LOCALITY_WORK": "max_locality_work",
        }
        for var, name in env.items():
            raw = os.environ.get(var)
            if raw:
                caps = replace(caps, **{name: int(float(raw))})
        return caps


_override: Caps | None = None


def current_caps() -> Caps:
    return _override if _override is not None else Caps.from_env()


@contextmanager
def caps_override(**changes):
    """Temporarily replace caps (used by the CLI flags and by tests)."""
    global _override
    previous = _override
    _override = replace(current_caps(), **changes)
    try:
        yield _override
    finally:
        _override = previous
