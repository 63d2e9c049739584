"""Rotation orbits ``{start + k alpha}``, star discrepancy and target-hitting counts.

Orbits are computed in ``P``-bit fixed point with rigorous widths (see
:func:`rotslice.certified.fixed_point_orbit`).  Membership of a point in a
closed target is decided on its enclosure; points whose enclosure meets a
boundary are recomputed alone at higher precision.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Protocol, Sequence, Tuple

import numpy as np

from . import kernels
from .certified import CertifiedReal, FixedOrbit, fixed_point_orbit, parse_real
from .contfrac import RHIN, ContinuedFraction, GapBoundParams, cf_expand, discrepancy_bound
from .errors import DegenerateInputError, PrecisionError, PreconditionError, ResourceLimitError
from .limits import get_limits


def _as_real(x) -> CertifiedReal:
    if isinstance(x, CertifiedReal):
        return x
    if isinstance(x, (int, Fraction)):
        return CertifiedReal.exact(x)
    return parse_real(str(x))


@dataclass(frozen=True)
class OrbitSpec:
    alpha: CertifiedReal
    N: int
    start: CertifiedReal = field(default_factory=lambda: CertifiedReal.exact(0))
    allow_rational: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alpha", _as_real(self.alpha))
        object.__setattr__(self, "start", _as_real(self.start))
        if self.N < 0:
            raise PreconditionError("N must be >= 0")
        if self.N > get_limits().max_n:
            raise ResourceLimitError(f"N={self.N} exceeds max_n={get_limits().max_n}")
        if self.alpha.is_exact and not self.allow_rational:
            raise DegenerateInputError("rational alpha: pass allow_rational=True to use it anyway")


def _base_prec(N: int) -> int:
    return 96 + 2 * max(N, 1).bit_length()


def _orbit(spec: OrbitSpec, P: int) -> FixedOrbit:
    return fixed_point_orbit(spec.alpha, spec.N, P, spec.start)


def _single_point(spec: OrbitSpec, k: int, P: int) -> Tuple[int, int]:
    """Fixed-point enclosure ``(low, width)`` of point ``k`` alone."""
    one = 1 << P
    a = spec.alpha.refine(P + 16 + k.bit_length())
    s = spec.start.refine(P + 16)
    lo = (s.lo + k * a.lo)
    hi = (s.hi + k * a.hi)
    f = math.floor(lo)
    L = math.floor((lo - f) * one)
    H = math.ceil((hi - f) * one)
    return L, H - L


def orbit_points(spec: OrbitSpec, eps) -> list[CertifiedReal]:
    """Certified ``{start + k alpha}`` for ``k < N`` with radius at most ``eps``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    if spec.alpha.is_exact and spec.start.is_exact:
        return [CertifiedReal.exact((spec.start.center + k * spec.alpha.center) % 1) for k in range(spec.N)]
    P = max(_base_prec(spec.N), -math.floor(math.log2(eps)) + spec.N.bit_length() + 8)
    cap = get_limits().max_prec
    while True:
        orb = _orbit(spec, P)
        one = orb.one
        wmax = max(orb.widths, default=0)
        if Fraction(wmax, 2 * one) <= eps and not orb.any_ambiguous():
            return [CertifiedReal.from_bounds(*orb.bounds(k)) if orb.widths[k] else CertifiedReal.exact(Fraction(orb.lows[k], one))
                    for k in range(spec.N)]
        if 2 * P > cap:
            raise PrecisionError("orbit points could not be certified at the precision cap")
        P *= 2


# --- targets ----------------------------------------------------------------------

class Target(Protocol):
    measure: Fraction

    def classify_fixed(self, lo: int, hi: int, P: int) -> Optional[bool]:
        """``True`` if ``[lo, hi]/2**P`` lies inside, ``False`` if disjoint, ``None`` if undecided."""


class IntervalUnion:
    """Finite union of closed subintervals of ``[0, 1]`` with rational endpoints.

    Overlapping or touching intervals are merged, so the stored intervals are
    pairwise disjoint and sorted.
    """

    def __init__(self, intervals: Iterable[Tuple] = ()):
        items = sorted((Fraction(a), Fraction(b)) for a, b in intervals)
        merged: list[Tuple[Fraction, Fraction]] = []
        for a, b in items:
            if a > b:
                raise PreconditionError(f"empty interval [{a}, {b}]")
            if a < 0 or b > 1:
                raise PreconditionError("intervals must lie in [0, 1]")
            if merged and a <= merged[-1][1]:
                if b > merged[-1][1]:
                    merged[-1] = (merged[-1][0], b)
            else:
                merged.append((a, b))
        self.intervals: Tuple[Tuple[Fraction, Fraction], ...] = tuple(merged)
        self.measure = sum((b - a for a, b in merged), Fraction(0))
        self._scaled: dict[int, Tuple[list[int], list[int]]] = {}

    def __len__(self) -> int:
        return len(self.intervals)

    def __repr__(self) -> str:
        return f"IntervalUnion({len(self.intervals)} intervals, measure={self.measure})"

    def contains(self, x) -> bool:
        x = Fraction(x)
        i = bisect.bisect_right([a for a, _ in self.intervals], x) - 1
        return i >= 0 and x <= self.intervals[i][1]

    def _endpoints(self, P: int):
        hit = self._scaled.get(P)
        if hit is None:
            one = 1 << P
            lefts = [math.ceil(a * one) for a, _ in self.intervals]
            rights = [math.floor(b * one) for _, b in self.intervals]
            hit = self._scaled[P] = (lefts, rights)
        return hit

    def classify_fixed(self, lo: int, hi: int, P: int) -> Optional[bool]:
        lefts, rights = self._endpoints(P)
        i = bisect.bisect_right(lefts, lo) - 1
        if i >= 0 and hi <= rights[i]:
            return True
        # disjoint: no interval with left <= hi and right >= lo
        j = bisect.bisect_right(lefts, hi) - 1
        if j < 0:
            return False
        if rights[j] < lo:
            return False
        return None


@dataclass
class HitSeries:
    """Orbit hits into a target.

    ``hits[k]`` is 1 when point ``k`` lies in the target; ``h(n)`` counts hits
    among the first ``n`` points.  ``unresolved`` lists points whose
    membership stayed undecided at the precision cap; they are counted as hits.
    """

    hits: np.ndarray
    target_measure: Fraction
    unresolved: Tuple[int, ...] = ()

    @property
    def N(self) -> int:
        return int(self.hits.size)

    @property
    def prefix(self) -> np.ndarray:
        return np.concatenate(([0], np.cumsum(self.hits, dtype=np.int64)))

    def h(self, n: int) -> int:
        return int(self.hits[:n].sum())

    @property
    def total(self) -> int:
        return int(self.hits.sum())

    @property
    def fraction(self) -> float:
        return self.total / self.N if self.N else 0.0

    def window_max(self, w: int) -> int:
        """Largest number of hits in ``w`` consecutive points."""
        return int(kernels.max_window_sum(self.hits, w))

    def window_density(self, w: int) -> float:
        return self.window_max(w) / w

    def hit_indices(self) -> np.ndarray:
        return np.flatnonzero(self.hits)


def hit_count(spec: OrbitSpec, target, max_prec: Optional[int] = None) -> HitSeries:
    """Exact hits of ``{start + k alpha}``, ``k < N``, into a closed target."""
    cap = max_prec or get_limits().max_prec
    N = spec.N
    hits = np.zeros(N, dtype=np.int8)
    if N == 0:
        return HitSeries(hits, target.measure)
    P = _base_prec(N)
    orb = _orbit(spec, P)
    one = orb.one
    pending = []
    classify = target.classify_fixed
    for k, (lo, w) in enumerate(zip(orb.lows, orb.widths)):
        hi = lo + w
        if hi >= one:
            pending.append(k)
            continue
        c = classify(lo, hi, P)
        if c is None:
            pending.append(k)
        elif c:
            hits[k] = 1
    unresolved = []
    for k in pending:
        decided = _refine_point(spec, target, k, P, cap)
        if decided is None:
            unresolved.append(k)
            hits[k] = 1
        elif decided:
            hits[k] = 1
    return HitSeries(hits, target.measure, tuple(unresolved))


def _refine_point(spec, target, k: int, P: int, cap: int) -> Optional[bool]:
    while P <= cap:
        lo, w = _single_point(spec, k, P)
        if lo + w < (1 << P):
            c = target.classify_fixed(lo, lo + w, P)
            if c is not None:
                return c
        if w == 0:
            return None
        P *= 2
    return None


# --- discrepancy ----------------------------------------------------------------

def star_discrepancy(points: Sequence) -> Fraction:
    """Exact ``D*_N = max_i max(i/N - x_(i), x_(i) - (i-1)/N)`` of exact points in ``[0, 1]``."""
    xs = sorted(Fraction(x) for x in points)
    N = len(xs)
    if N == 0:
        raise PreconditionError("star discrepancy of an empty set")
    if xs[0] < 0 or xs[-1] > 1:
        raise PreconditionError("points must lie in [0, 1]")
    best = Fraction(0)
    for i, x in enumerate(xs, start=1):
        best = max(best, Fraction(i, N) - x, x - Fraction(i - 1, N))
    return best


def _star_fixed(lows: Sequence[int], P: int) -> Fraction:
    xs = sorted(lows)
    N = len(xs)
    one = 1 << P
    best = 0
    for i, L in enumerate(xs, start=1):
        a = i * one - N * L
        b = N * L - (i - 1) * one
        if a > best:
            best = a
        if b > best:
            best = b
    return Fraction(best, N * one)


def star_discrepancy_orbit(spec: OrbitSpec, max_prec: Optional[int] = None) -> CertifiedReal:
    """Certified ``D*_N`` of the orbit.

    ``D*`` moves by at most ``t`` when every point moves by at most ``t``, so
    the value at the lower endpoints, widened by the largest enclosure width
    on both sides, contains the true value.
    """
    if spec.N == 0:
        raise PreconditionError("star discrepancy of an empty orbit")
    if spec.alpha.is_exact and spec.start.is_exact:
        return CertifiedReal.exact(star_discrepancy([p.center for p in orbit_points(spec, 1)]))
    cap = max_prec or get_limits().max_prec
    P = _base_prec(spec.N)
    while True:
        orb = _orbit(spec, P)
        if not orb.any_ambiguous():
            break
        if 2 * P > cap:
            raise PrecisionError("orbit straddles 0 at the precision cap")
        P *= 2
    d = _star_fixed(orb.lows, P)
    w = Fraction(max(orb.widths), orb.one)
    return CertifiedReal(d, w)


def gap_signatures(spec: OrbitSpec, max_prec: Optional[int] = None) -> Tuple[int, ...]:
    """Distinct ``d`` with a circle gap equal to ``{d alpha}`` between sorted orbit points.

    For irrational ``alpha`` distinct signatures are distinct gap lengths, so
    the three-gap theorem says there are at most three.
    """
    N = spec.N
    if N < 2:
        return ()
    cap = max_prec or get_limits().max_prec
    P = _base_prec(N)
    while True:
        orb = _orbit(spec, P)
        order = sorted(range(N), key=orb.lows.__getitem__)
        ok = not orb.any_ambiguous() and all(
            orb.lows[order[i]] + orb.widths[order[i]] < orb.lows[order[i + 1]] for i in range(N - 1))
        if ok:
            break
        if 2 * P > cap:
            raise PrecisionError("orbit points could not be ordered at the precision cap")
        P *= 2
    sigs = {order[i + 1] - order[i] for i in range(N - 1)}
    sigs.add(order[0] - order[-1])
    return tuple(sorted(sigs))


# --- covers built from invariant sets ---------------------------------------------

@dataclass(frozen=True)
class CoverBoundReport:
    """Hits next to the (constant-free) growth predicted for them."""

    hits: HitSeries
    s: float
    eps: float
    lm1_bound: float         # N * D_N ** (1 - s - eps), with D_N from the partial-quotient bound
    lm2_bound: float         # N ** (C_alpha * (s + eps))
    discrepancy_used: Fraction


def hit_count_cover(spec: OrbitSpec, cover, s: float, eps: float = 0.05,
                    cf: Optional[ContinuedFraction] = None,
                    params: GapBoundParams = RHIN, C_abs=1) -> CoverBoundReport:
    """Hits into an invariant-set cover, reported with both lemma-style bounds.

    The discrepancy in the first bound is the continued-fraction estimate for
    ``alpha`` at ``N``, a stand-in for the true ``D_N``.
    """
    series = hit_count(spec, cover)
    N = max(spec.N, 1)
    if cf is None:
        frac = spec.alpha if spec.alpha.hi < 1 else spec.alpha - spec.alpha.floor()
        cf = cf_expand(frac, 200)
    dN = discrepancy_bound(N, cf, C_abs).normalized
    d_eff = min(dN, Fraction(1))
    lm1 = N * float(d_eff) ** (1 - s - eps)
    lm2 = float(N) ** (float(params.C_alpha) * (s + eps))
    return CoverBoundReport(series, s, eps, lm1, lm2, dN)


__all__ = [
    "OrbitSpec", "IntervalUnion", "HitSeries", "CoverBoundReport", "orbit_points", "star_discrepancy",
    "star_discrepancy_orbit", "hit_count", "hit_count_cover", "gap_signatures",
]
