"""Sparse indices, densities of integer sets, dimension fits and gauge sums.

Set representations are finite: a list of exact points, or a list of closed
intervals (cells of a cover).  Intervals over-approximate the set, so any
index computed from them is an upper estimate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import kernels
from .errors import PreconditionError, ResolutionError

Interval = Tuple[Fraction, Fraction]


def _as_intervals(setrep) -> List[Interval]:
    out = []
    for item in setrep:
        if isinstance(item, (tuple, list)) and len(item) == 2:
            a, b = Fraction(item[0]), Fraction(item[1])
        else:
            a = b = Fraction(item)
        if a > b:
            raise PreconditionError(f"empty interval [{a}, {b}]")
        out.append((a, b))
    return out


def _floor_log2(x: Fraction) -> int:
    """``floor(log2 x)`` for ``x > 0``, exactly."""
    n, d = x.numerator, x.denominator
    e = n.bit_length() - d.bit_length()     # x lies in (2**(e-1), 2**(e+1))
    if e >= 0:
        if n < d << e:
            e -= 1
    else:
        if n << -e < d:
            e -= 1
    return e


def _ceil_log2(x: Fraction) -> int:
    e = _floor_log2(x)
    return e if x == Fraction(2) ** e else e + 1


@dataclass(frozen=True)
class SparseIndex:
    """Scales ``k`` in ``[0, kmax]`` at which the set meets the annulus ``2**-k-1 <= |z - a| <= 2**-k``."""

    anchor: Fraction
    kmax: int
    hits: Tuple[int, ...]
    over_approximation: bool

    def density(self, lo: int = 0, hi: Optional[int] = None) -> float:
        hi = self.kmax if hi is None else hi
        if hi < lo:
            raise PreconditionError("empty range")
        return sum(1 for k in self.hits if lo <= k <= hi) / (hi - lo + 1)


def _distance_range(a: Fraction, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    if lo <= a <= hi:
        dmin = Fraction(0)
    else:
        dmin = min(abs(lo - a), abs(hi - a))
    return dmin, max(abs(lo - a), abs(hi - a))


def sparse_index(setrep, a, kmax: int) -> SparseIndex:
    """Annulus hits of a point or interval list around ``a``.

    With intervals, every one must be shorter than ``2**-(kmax+2)``; otherwise
    the interval containing ``a`` would fake hits at the finest scales.
    """
    a = Fraction(a)
    if kmax < 0:
        raise PreconditionError("kmax must be >= 0")
    items = _as_intervals(setrep)
    is_cover = any(lo != hi for lo, hi in items)
    limit = Fraction(1, 2 ** (kmax + 2))
    if any(hi - lo >= limit for lo, hi in items):
        raise ResolutionError(f"cells must be shorter than 2**-{kmax + 2} to resolve kmax={kmax}")
    hits = set()
    for lo, hi in items:
        dmin, dmax = _distance_range(a, lo, hi)
        if dmax == 0:
            continue
        # k with 2**-(k+1) <= dmax and 2**-k >= dmin
        k_lo = max(0, -_floor_log2(dmax) - 1)
        k_hi = kmax if dmin == 0 else min(kmax, -_ceil_log2(dmin))
        hits.update(range(k_lo, k_hi + 1))
    return SparseIndex(a, kmax, tuple(sorted(hits)), is_cover)


# --- densities ------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityReport:
    """Counting over ``[1, n]``.

    ``natural`` holds the prefix densities at ``(N, N//10, N//100)``.
    ``window_max[w]`` is the largest density of ``w`` consecutive integers in
    ``[1, N]``.  ``banach[w]`` is the largest window density over the window
    lengths ``w * 2**j`` and the three prefix lengths, so it is never below
    the natural values.
    """

    N: int
    natural: Tuple[float, float, float]
    upper: float
    lower: float
    window_max: Dict[int, float]
    banach: Dict[int, float]


def _indicator(W: Iterable[int], N: int) -> np.ndarray:
    ind = np.zeros(N, dtype=np.int64)          # ind[i-1] is membership of i
    for k in W:
        k = int(k)
        if k < 0 or k > N:
            raise PreconditionError(f"{k} outside [0, {N}]")
        if k >= 1:
            ind[k - 1] = 1
    return ind


def density(W: Iterable[int], N: int, window_w: Union[int, Sequence[int]] = ()) -> DensityReport:
    if N < 1:
        raise PreconditionError("N must be >= 1")
    ind = _indicator(W, N)
    csum = np.concatenate(([0], np.cumsum(ind)))
    ns = [n for n in (N, N // 10, N // 100)]
    natural = tuple(float(csum[n] / n) if n >= 1 else float("nan") for n in ns)
    finite = [x for x in natural if not math.isnan(x)]
    ws = [window_w] if isinstance(window_w, int) else list(window_w)
    window_max, banach = {}, {}
    for w in ws:
        if not 1 <= w <= N:
            raise PreconditionError(f"window {w} outside [1, {N}]")
        window_max[w] = kernels.max_window_sum(ind, w) / w
        lengths = {n for n in ns if n >= 1}
        L = w
        while L <= N:
            lengths.add(L)
            L *= 2
        banach[w] = max(kernels.max_window_sum(ind, L) / L for L in lengths)
    return DensityReport(N, natural, max(finite), min(finite), window_max, banach)


# --- dimension fits ---------------------------------------------------------------------

@dataclass(frozen=True)
class DimFit:
    slope: float
    intercept: float
    residuals: Tuple[float, ...]
    ratios: Tuple[float, ...]          # log count / -log scale per depth


def box_dim_fit(reports: Sequence) -> DimFit:
    """Least-squares slope of ``log N`` against ``-log scale`` over cover reports."""
    pts = [(float(-math.log(Fraction(r.scale))), math.log(r.count)) for r in reports if r.count > 0]
    if len(pts) < 3:
        raise PreconditionError("need at least 3 depths with nonzero counts")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ratios = tuple(float(b / a) if a > 0 else float("nan") for a, b in pts)
    return DimFit(float(slope), float(intercept), tuple(float(r) for r in resid), ratios)


def _grid_count(items: List[Interval], lo: Fraction, hi: Fraction, r: Fraction) -> int:
    """Number of ``r``-grid cells meeting the items inside ``[lo, hi]``, counted as merged index ranges."""
    ranges = []
    for a, b in items:
        a, b = max(a, lo), min(b, hi)
        if a <= b:
            ranges.append((math.floor(a / r), math.floor(b / r)))
    ranges.sort()
    total, end = 0, None
    for first, last in ranges:
        if end is None or first > end:
            total += last - first + 1
            end = last
        elif last > end:
            total += last - end
            end = last
    return total


def local_ratio_probe(setrep, samples: Iterable[Tuple]) -> float:
    """Largest ``log N(B(x,R) ∩ F, r) / log(R/r)`` over the samples; ``N`` counts ``r``-grid cells."""
    items = _as_intervals(setrep)
    best = 0.0
    seen = False
    for x, R, r in samples:
        x, R, r = Fraction(x), Fraction(R), Fraction(r)
        if not 0 < r < R:
            raise PreconditionError("need 0 < r < R")
        seen = True
        n = _grid_count(items, x - R, x + R, r)
        if n > 1:
            best = max(best, math.log(n) / math.log(R / r))
    if not seen:
        raise PreconditionError("no samples")
    return best


def gauge_sum(diameters: Iterable, s_param: float, coef: float = 27.0) -> float:
    """``sum exp(-(-log d)**(coef * s))`` over the cover diameters."""
    if not 0 < s_param < 1:
        raise PreconditionError("s_param must lie in (0, 1)")
    total = 0.0
    for d in diameters:
        d = float(d)
        if not 0 < d < 1:
            raise PreconditionError("diameters must lie in (0, 1)")
        total += math.exp(-((-math.log(d)) ** (coef * s_param)))
    return total


__all__ = [
    "SparseIndex", "DensityReport", "DimFit", "sparse_index", "density", "box_dim_fit",
    "local_ratio_probe", "gauge_sum",
]
