"""Coin-driven hitting times along a rotation, and closure-measure estimates.

Randomness comes from NumPy's Philox generator keyed by the 64-bit seed.
Philox is counter based, so each seed gives an independent, reproducible
stream without shared state between replicas.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from .certified import CertifiedReal, fixed_point_orbit, parse_real
from .errors import PrecisionError, PreconditionError, ResourceLimitError
from .limits import get_limits

MIN_P = 1e-9


@dataclass(frozen=True)
class CoinModel:
    """Seeded Bernoulli coins; several probabilities make a categorical draw over targets."""

    seed: int
    probabilities: Tuple[float, ...]
    min_p: float = MIN_P

    def __post_init__(self):
        probs = tuple(float(p) for p in (self.probabilities if isinstance(self.probabilities, (tuple, list)) else (self.probabilities,)))
        object.__setattr__(self, "probabilities", probs)
        if not probs:
            raise PreconditionError("at least one probability is needed")
        if any(p < self.min_p or p > 1 for p in probs):
            raise PreconditionError(f"each probability must lie in [{self.min_p}, 1]")
        if sum(probs) > 1 + 1e-12:
            raise PreconditionError("probabilities sum to more than 1")
        if not 0 <= self.seed < 2 ** 64:
            raise PreconditionError("seed must be a 64-bit unsigned value")

    @property
    def delta(self) -> float:
        return max(0.0, 1.0 - sum(self.probabilities))

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=self.seed))


def k_indicator(K, N: int) -> np.ndarray:
    """Boolean membership of ``0..N-1`` in ``K``: ``"all"``, ``"evens"``, ``"odds"``, ``"squares"``, a list or a predicate."""
    idx = np.arange(N)
    if isinstance(K, str):
        if K in ("all", "naturals"):
            return np.ones(N, dtype=bool)
        if K == "evens":
            return idx % 2 == 0
        if K == "odds":
            return idx % 2 == 1
        if K == "squares":
            r = np.floor(np.sqrt(idx)).astype(np.int64)
            return (r * r == idx) | ((r + 1) * (r + 1) == idx)
        raise PreconditionError(f"unknown integer set {K!r}")
    if callable(K):
        return np.fromiter((bool(K(int(k))) for k in range(N)), dtype=bool, count=N)
    out = np.zeros(N, dtype=bool)
    for k in K:
        if 0 <= int(k) < N:
            out[int(k)] = True
    return out


def lower_density(K) -> float:
    """Lower density of the named sets (0 for finite lists)."""
    return {"all": 1.0, "naturals": 1.0, "evens": 0.5, "odds": 0.5, "squares": 0.0}.get(K, 0.0) if isinstance(K, str) else 0.0


def simulate_hits(model: CoinModel, K, N: int) -> Tuple[np.ndarray, ...]:
    """Sorted hit indices ``K ∩ K(omega, B_i)`` in ``[0, N)``, one array per target."""
    if N < 0:
        raise PreconditionError("N must be >= 0")
    if N > get_limits().max_n:
        raise ResourceLimitError("N exceeds max_n")
    member = k_indicator(K, N)
    u = model.generator().random(N)
    edges = np.cumsum(model.probabilities)
    # a single uniform per time step: target i when u falls in [edges[i-1], edges[i])
    which = np.searchsorted(edges, u, side="right")
    return tuple(np.flatnonzero(member & (which == i)) for i in range(len(model.probabilities)))


@dataclass(frozen=True)
class MeasureEstimate:
    """``cells_hit * 2**-r`` for the dyadic cells met by the hit points."""

    r: int
    cells_hit: int
    n_points: int

    @property
    def estimate(self) -> Fraction:
        return Fraction(self.cells_hit, 1 << self.r)


class OrbitCells:
    """Dyadic ``r``-cell of each rotation point ``{k alpha}``, ``k < N``, certified."""

    def __init__(self, alpha, N: int, r: int, max_prec: Optional[int] = None):
        if not isinstance(alpha, CertifiedReal):
            alpha = parse_real(str(alpha))
        if r < 0 or r > 62:
            raise PreconditionError("r must lie in [0, 62]")
        cap = max_prec or get_limits().max_prec
        P = 96 + 2 * max(N, 1).bit_length()
        while True:
            orb = fixed_point_orbit(alpha, N, P)
            shift = P - r
            lo = [x >> shift for x in orb.lows]
            hi = [(x + w) >> shift for x, w in zip(orb.lows, orb.widths)]
            if lo == hi:
                break
            if 2 * P > cap:
                raise PrecisionError("orbit points straddle dyadic cell boundaries at the precision cap")
            P *= 2
        self.r = r
        self.cells = np.array(lo, dtype=np.int64)


def closure_measure(cells: OrbitCells, hits: np.ndarray) -> MeasureEstimate:
    hits = np.asarray(hits, dtype=np.int64)
    if hits.size and (hits.min() < 0 or hits.max() >= cells.cells.size):
        raise PreconditionError("hit index outside the computed orbit")
    return MeasureEstimate(cells.r, int(np.unique(cells.cells[hits]).size), int(hits.size))


def multi_target_best(model: CoinModel, K, N: int, r: int, alpha="golden",
                      cells: Optional[OrbitCells] = None) -> Tuple[int, MeasureEstimate, Tuple[MeasureEstimate, ...]]:
    """Target whose hit set has the largest closure estimate (ties: smallest index)."""
    cells = cells or OrbitCells(alpha, N, r)
    ests = tuple(closure_measure(cells, h) for h in simulate_hits(model, K, N))
    best = max(range(len(ests)), key=lambda i: (ests[i].cells_hit, -i))
    return best, ests[best], ests


def concentration_ok(freq: float, p: float, N: int) -> bool:
    """Realised frequency within ``4 sqrt(p(1-p)/N)`` of ``p``."""
    return abs(freq - p) <= 4 * math.sqrt(p * (1 - p) / N)


__all__ = [
    "CoinModel", "MeasureEstimate", "OrbitCells", "k_indicator", "lower_density", "simulate_hits",
    "closure_measure", "multi_target_best", "concentration_ok",
]
