"""Certified continued fractions, Ostrowski numeration and orbit-separation bounds.

Indexing uses the standard seed ``q_{-1} = 0``, ``q_0 = 1`` and
``q_n = a_n q_{n-1} + q_{n-2}``, together with ``p_{-1} = 1``, ``p_0 = 0`` for
numbers in ``(0, 1)``.  For the golden ratio this gives ``q = 1, 1, 2, 3, 5, ...``.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .certified import CertifiedReal, RationalPower, fixed_point_orbit, parse_real
from .errors import PrecisionError, PreconditionError, ResourceLimitError
from .limits import get_limits


@dataclass(frozen=True)
class ContinuedFraction:
    """Certified partial quotients ``a_1..a_m`` of a number in ``(0, 1)``.

    ``rational`` is set when the input was an exact rational and the
    expansion is complete.
    """

    alpha: CertifiedReal
    quotients: Tuple[int, ...]
    rational: bool = False
    prec: int = 0

    def __len__(self) -> int:
        return len(self.quotients)

    @property
    def convergents(self) -> Tuple[Tuple[int, int], ...]:
        """``(p_n, q_n)`` for ``n = 0..m``."""
        p2, q2, p1, q1 = 1, 0, 0, 1
        out = [(0, 1)]
        for a in self.quotients:
            p2, q2, p1, q1 = p1, q1, a * p1 + p2, a * q1 + q2
            out.append((p1, q1))
        return tuple(out)

    @property
    def denominators(self) -> Tuple[int, ...]:
        """``q_0..q_m``."""
        return tuple(q for _, q in self.convergents)

    def a(self, n: int) -> int:
        """Partial quotient ``a_n`` (1-indexed)."""
        return self.quotients[n - 1]

    def convergent_error_ok(self, n: int) -> bool:
        """Certified check of ``|alpha - p_n/q_n| <= 1/(q_n q_{n+1})`` for ``0 <= n < m``."""
        conv = self.convergents
        p, q = conv[n]
        q_next = conv[n + 1][1]
        x = self.alpha
        err = max(abs(x.hi - Fraction(p, q)), abs(x.lo - Fraction(p, q)))
        return err <= Fraction(1, q * q_next)


def _gauss_prefix(lo: Fraction, hi: Fraction, limit: int) -> Tuple[list[int], bool]:
    """Quotients shared by every number in ``[lo, hi]``; the flag reports a finished rational."""
    out: list[int] = []
    if lo == hi:
        y = lo
        while y and len(out) < limit:
            inv = 1 / y
            a = math.floor(inv)
            out.append(a)
            y = inv - a
        return out, y == 0
    while len(out) < limit:
        if lo <= 0:
            break
        a, b = 1 / hi, 1 / lo
        qa, qb = math.floor(a), math.floor(b)
        ra, rb = a - qa, b - qb
        # both tails must stay strictly inside (0, 1) for the quotient to be shared
        if qa != qb or ra == 0 or rb == 0:
            break
        out.append(qa)
        lo, hi = ra, rb
        if lo > hi:
            lo, hi = hi, lo
    return out, False


def cf_expand(x, max_terms: int, max_prec: Optional[int] = None) -> ContinuedFraction:
    """Up to ``max_terms`` certified quotients of ``x``, refining its enclosure as needed.

    A quotient is emitted only when the whole enclosure agrees on it.  A short
    result means the precision cap was reached.
    """
    if not isinstance(x, CertifiedReal):
        x = parse_real(str(x)) if not isinstance(x, (int, Fraction)) else CertifiedReal.exact(x)
    if max_terms < 0:
        raise PreconditionError("max_terms must be >= 0")
    if not (0 < x.lo and x.hi < 1):
        raise PreconditionError("cf_expand needs a number certified inside (0, 1)")
    cap = max_prec or get_limits().max_prec
    while True:
        quotients, done = _gauss_prefix(x.lo, x.hi, max_terms)
        if len(quotients) >= max_terms or done or x.is_exact or x.source is None:
            return ContinuedFraction(x, tuple(quotients), done, x.prec)
        nxt = max(x.prec, 64) * 2
        if nxt > cap:
            return ContinuedFraction(x, tuple(quotients), False, x.prec)
        x = x.refine(nxt)


# --- Ostrowski numeration ------------------------------------------------------------

@dataclass(frozen=True)
class OstrowskiRep:
    """``N = sum_j b_j q_j`` with ``b_0 < a_1``, ``b_j <= a_{j+1}``, and ``b_{j-1} = 0`` whenever ``b_j = a_{j+1}``."""

    N: int
    coefficients: Tuple[int, ...]         # b_0..b_m

    @property
    def m(self) -> int:
        return len(self.coefficients) - 1


def _top_index(N: int, qs: Tuple[int, ...]) -> int:
    m = bisect.bisect_right(qs, N) - 1
    if m + 1 >= len(qs):
        raise PreconditionError(f"need q_(m+1) > {N}: only {len(qs)} denominators available")
    return m


def ostrowski_rep(N: int, cf: ContinuedFraction) -> OstrowskiRep:
    """Greedy-from-the-top Ostrowski expansion of ``N``."""
    if N < 1:
        raise PreconditionError("N must be >= 1")
    qs = cf.denominators
    m = _top_index(N, qs)
    b = [0] * (m + 1)
    r = N
    for j in range(m, -1, -1):
        b[j], r = divmod(r, qs[j])
    return OstrowskiRep(N, tuple(b))


def ostrowski_valid(rep: OstrowskiRep, cf: ContinuedFraction) -> bool:
    """Check value and digit constraints of ``rep``."""
    qs, a = cf.denominators, cf.quotients
    b = rep.coefficients
    if sum(bj * qs[j] for j, bj in enumerate(b)) != rep.N:
        return False
    if b and b[0] > a[0] - 1:
        return False
    for j in range(1, len(b)):
        if not 0 <= b[j] <= a[j]:
            return False
        if b[j] == a[j] and b[j - 1] != 0:
            return False
    return True


@dataclass(frozen=True)
class DiscrepancyBound:
    """``raw = sum_{n<=m} a_n + sum_{n<=m} b_n`` and ``normalized = C * raw / N``."""

    N: int
    m: int
    raw: int
    normalized: Fraction
    C: Fraction


def discrepancy_bound(N: int, cf: ContinuedFraction, C_abs=1) -> DiscrepancyBound:
    rep = ostrowski_rep(N, cf)
    C = Fraction(C_abs)
    if C <= 0:
        raise PreconditionError("C_abs must be positive")
    raw = sum(cf.quotients[:rep.m]) + sum(rep.coefficients)
    return DiscrepancyBound(N, rep.m, raw, C * raw / N, C)


# --- separation bounds ----------------------------------------------------------

@dataclass(frozen=True)
class GapBoundParams:
    """Constants of ``|n alpha - m| >= c_alpha / n**C_alpha``."""

    c_alpha: Fraction
    C_alpha: Fraction

    def __post_init__(self):
        if Fraction(self.c_alpha) <= 0 or Fraction(self.C_alpha) <= 0:
            raise PreconditionError("gap constants must be positive")
        object.__setattr__(self, "c_alpha", Fraction(self.c_alpha))
        object.__setattr__(self, "C_alpha", Fraction(self.C_alpha))


RHIN = GapBoundParams(Fraction(1, 10**14), Fraction(143, 10))


def gap_lower_bound(i1: int, params: GapBoundParams = RHIN) -> RationalPower:
    """``c_alpha / i1**(C_alpha - 1)``, kept exact."""
    if i1 < 1:
        raise PreconditionError("i1 must be >= 1")
    return RationalPower(params.c_alpha, Fraction(i1), -(params.C_alpha - 1))


def roth_bound(n: int, eps, c_eps) -> RationalPower:
    """``c_eps / n**(2 + eps)``."""
    eps, c_eps = Fraction(eps), Fraction(c_eps)
    if n < 1 or eps < 0 or c_eps <= 0:
        raise PreconditionError("roth_bound needs n >= 1, eps >= 0, c_eps > 0")
    return RationalPower(c_eps, Fraction(n), -(2 + eps))


@dataclass(frozen=True)
class GapCheckResult:
    n_max: int
    ok: bool
    violations: Tuple[int, ...]      # i1 values failing the bound
    tightest_i1: int                 # i1 with the smallest gap/bound ratio
    tightest_log10_ratio: float
    prec: int


def gap_check(alpha: CertifiedReal, n_max: int, params: GapBoundParams = RHIN,
              prec: int = 320, max_prec: Optional[int] = None) -> GapCheckResult:
    """Verify ``|{i1 alpha} - {i2 alpha}| >= gap_lower_bound(i1)`` for all ``1 <= i2 < i1 <= n_max``.

    Points are inserted in order of ``i``; only the sorted predecessor and
    successor of each new point can realise its minimum distance.
    """
    if n_max < 2:
        return GapCheckResult(n_max, True, (), 0, math.inf, 0)
    if n_max > get_limits().max_n:
        raise ResourceLimitError("n_max exceeds max_n")
    cap = max_prec or get_limits().max_prec
    while True:
        orbit = fixed_point_orbit(alpha, n_max + 1, prec)
        result = _gap_scan(orbit, n_max, params)
        if result is not None:
            return result
        if prec * 2 > cap:
            raise PrecisionError("orbit points could not be separated at the precision cap")
        prec *= 2


def _gap_scan(orbit, n_max: int, params: GapBoundParams) -> Optional[GapCheckResult]:
    one = orbit.one
    lows, widths = orbit.lows, orbit.widths
    if any(orbit.ambiguous(i) for i in range(1, n_max + 1)):
        return None
    keys: list[int] = []
    order: list[int] = []
    violations = []
    best_i, best_ratio = 0, math.inf
    for i1 in range(1, n_max + 1):
        lo = lows[i1]
        pos = bisect.bisect_left(keys, lo)
        gaps = []
        if pos > 0:
            j = order[pos - 1]
            gaps.append(lo - (lows[j] + widths[j]))
        if pos < len(keys):
            j = order[pos]
            gaps.append(lows[j] - (lo + widths[i1]))
        keys.insert(pos, lo)
        order.insert(pos, i1)
        if not gaps:
            continue
        g = min(gaps)
        if g <= 0:
            return None      # enclosures overlap: refine
        bound = gap_lower_bound(i1, params)
        gap = Fraction(g, one)
        if bound.compare(gap) > 0:
            violations.append(i1)
        ratio = math.log10(gap) - math.log10(float(bound)) if float(bound) > 0 else math.inf
        if ratio < best_ratio:
            best_i, best_ratio = i1, ratio
    return GapCheckResult(n_max, not violations, tuple(violations), best_i, best_ratio, orbit.P)


__all__ = [
    "ContinuedFraction", "OstrowskiRep", "DiscrepancyBound", "GapBoundParams", "GapCheckResult",
    "RHIN", "cf_expand", "ostrowski_rep", "ostrowski_valid", "discrepancy_bound",
    "gap_lower_bound", "roth_bound", "gap_check",
]
