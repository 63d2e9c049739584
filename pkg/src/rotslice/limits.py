"""Resource caps, overridable through environment variables.

Each ``ROTSLICE_MAX_*`` variable (``BITS``, ``PREC``, ``DEPTH``, ``N``,
``CELLS``) replaces the matching default below when set.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import ConfigError


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"environment variable {name} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ConfigError(f"environment variable {name} must be positive")
    return value


@dataclass(frozen=True)
class Limits:
    max_bits: int = 10**8        # size of any single big integer
    max_prec: int = 1 << 18      # working precision for certified reals, in bits
    max_depth: int = 64          # digit depth of covers and slice searches
    max_n: int = 10**7           # orbit lengths, scan ranges, sample counts
    max_cells: int = 2_000_000   # explicit cell lists

    @classmethod
    def from_env(cls) -> "Limits":
        base = cls()
        return cls(
            max_bits=_env_int("ROTSLICE_MAX_BITS", base.max_bits),
            max_prec=_env_int("ROTSLICE_MAX_PREC", base.max_prec),
            max_depth=_env_int("ROTSLICE_MAX_DEPTH", base.max_depth),
            max_n=_env_int("ROTSLICE_MAX_N", base.max_n),
            max_cells=_env_int("ROTSLICE_MAX_CELLS", base.max_cells),
        )

    def updated(self, **changes) -> "Limits":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


_current = Limits.from_env()


def get_limits() -> Limits:
    return _current


def set_limits(limits: Limits) -> Limits:
    """Install ``limits`` globally and return the previous value."""
    global _current
    previous, _current = _current, limits
    return previous
