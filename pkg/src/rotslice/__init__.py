"""Digit patterns of powers, certified irrational rotations, and slices of invariant sets.

Modules:

- ``certified``: exact-rational interval reals with nested refinement
- ``bigpow``: exact powers and their digit expansions
- ``apscan``: progressions among digit positions, power scans, digit frequencies
- ``contfrac``: certified continued fractions, Ostrowski expansions, orbit gap checks
- ``rotation``: certified rotation orbits, hit counts, star discrepancy
- ``invset``: digit-restriction sets, covers, slices, dipoles, pushing maps
- ``sparse``: sparse indices, densities, dimension fits, gauge sums
- ``casino``: seeded Bernoulli-coupled rotation hits
- ``cli``: the ``rotslice`` command
"""
from .errors import (
    ConfigError,
    DegenerateInputError,
    PrecisionError,
    PreconditionError,
    ResolutionError,
    ResourceLimitError,
    RotsliceError,
)
from .limits import Limits, get_limits, set_limits
from .certified import CertifiedReal, log_ratio, parse_real
from .tables import VERSION as __version__

__all__ = [
    "CertifiedReal", "ConfigError", "DegenerateInputError", "Limits", "PrecisionError", "PreconditionError",
    "ResolutionError", "ResourceLimitError", "RotsliceError", "get_limits", "log_ratio", "parse_real",
    "set_limits", "__version__",
]
