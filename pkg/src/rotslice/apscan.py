"""Arithmetic progressions among digit positions, and digit-block counts.

Position sets are turned into Python integers used as bitmasks (bit ``i`` set
when ``i`` is a position).  For base-2 expansions the integer itself already is
that mask, shifted by one, so scanning ``3**k`` never materialises a position
list.  A progression of step ``d`` with ``L`` terms exists iff
``S & (S >> d) & ... & (S >> (L-1)d)`` is nonzero; small steps are tried this
way first, the remaining steps go to the pair-search kernel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from . import kernels
from .bigpow import (DigitExpansion, _digits_lsd, digit_count, digits, multiplicatively_dependent,
                     positions_of_digit, pow_checked)
from .certified import CertifiedReal, iv_bounds, iv_precision, log_ratio, parse_real
from .errors import DegenerateInputError, PreconditionError, ResourceLimitError
from .limits import get_limits

SMALL_STEPS = 64


@dataclass(frozen=True)
class ApWitness:
    """An ``length``-term progression ``start, start+step, ...`` inside a position set."""

    start: int
    step: int
    length: int = 3

    def __post_init__(self):
        if self.step < 1 or self.length < 2:
            raise PreconditionError("a witness needs step >= 1 and length >= 2")

    @property
    def terms(self) -> Tuple[int, ...]:
        return tuple(self.start + t * self.step for t in range(self.length))

    @property
    def a(self) -> int:
        return self.start

    @property
    def b(self) -> int:
        return self.start + self.step

    @property
    def c(self) -> int:
        return self.start + 2 * self.step

    def check(self, s: Iterable[int]) -> bool:
        members = set(s)
        return all(t in members for t in self.terms)


@dataclass(frozen=True)
class BlockCount:
    word: Tuple[int, ...]
    window: int
    count: int
    anchor: str = "most_significant"


def _mask_of(s: Iterable[int]) -> int:
    mask = 0
    for x in s:
        if x < 0:
            raise PreconditionError("positions must be nonnegative")
        mask |= 1 << x
    return mask


def _positions_of_mask(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _kap_in_mask(mask: int, length: int) -> Optional[Tuple[int, int]]:
    """Smallest ``(step, start)`` progression in the bitmask, returned as ``(start, step)``."""
    if mask == 0 or length < 2:
        return None
    top = mask.bit_length() - 1
    low = (mask & -mask).bit_length() - 1
    span = top - low
    if span < length - 1:
        return None
    max_step = span // (length - 1)
    for d in range(1, min(SMALL_STEPS, max_step) + 1):
        m = mask
        for t in range(1, length):
            m &= mask >> (t * d)
            if not m:
                break
        if m:
            return (m & -m).bit_length() - 1, d
    if max_step <= SMALL_STEPS:
        return None
    hit = kernels.ap_first(_positions_of_mask(mask), length, SMALL_STEPS + 1)
    return None if hit is None else (int(hit[0]), int(hit[1]))


def find_kap(s: Iterable[int], L: int) -> Optional[ApWitness]:
    """An ``L``-term progression in ``s`` with the smallest ``(step, start)``, or ``None``."""
    if L < 3:
        raise PreconditionError("L must be >= 3")
    hit = _kap_in_mask(_mask_of(s), L)
    return None if hit is None else ApWitness(hit[0], hit[1], L)


def find_3ap(s: Iterable[int]) -> Optional[ApWitness]:
    """A 3-term progression in ``s`` with the smallest ``(step, start)``, or ``None``."""
    return find_kap(s, 3)


def _word_bytes(word) -> bytes:
    if isinstance(word, str):
        word = [int(ch, 36) for ch in word]
    return bytes(int(w) for w in word)


def block_count(e: DigitExpansion, word, window_m: int, anchor: str = "most_significant") -> BlockCount:
    """Overlapping occurrences of ``word`` (written most significant first) in an ``m``-digit window.

    ``anchor`` selects the top ``m`` digits or the bottom ``m`` digits.
    """
    w = _word_bytes(word)
    if not 1 <= window_m <= len(e):
        raise PreconditionError(f"window {window_m} outside [1, {len(e)}]")
    if not 1 <= len(w) <= window_m:
        raise PreconditionError("word length must be in [1, window]")
    if any(x >= e.base for x in w):
        raise PreconditionError("word uses a digit outside the base")
    msd = bytes(reversed(e.digits))
    if anchor == "most_significant":
        seq = msd[:window_m]
    elif anchor == "least_significant":
        seq = msd[len(msd) - window_m:]
    else:
        raise PreconditionError(f"unknown anchor {anchor!r}")
    return BlockCount(tuple(w), window_m, kernels.count_word(seq, w), anchor)


def _k_values(k_range) -> range:
    if isinstance(k_range, range):
        return k_range
    lo, hi = k_range
    return range(int(lo), int(hi) + 1)


def _power_position_masks(p: int, q_base: int, ks: range):
    """Yield ``(k, mask)`` where ``mask`` has bit ``i`` set iff position ``i`` of ``p**k`` holds digit 1."""
    if len(ks) == 0:
        return
    cap = get_limits().max_bits
    if ks[-1] * math.log2(p) > cap and ks.step > 0:
        raise ResourceLimitError(f"{p}**{ks[-1]} exceeds the bit cap {cap}")
    if ks.step == 1 and ks.start >= 0:
        n = pow_checked(p, ks.start)
        for k in ks:
            if k > ks.start:
                n *= p
            yield k, _digit1_mask(n, q_base)
    else:
        for k in ks:
            yield k, _digit1_mask(pow_checked(p, k), q_base)


def _digit1_mask(n: int, q_base: int) -> int:
    if q_base == 2:
        return n << 1          # bit i of n is position i + 1
    return _mask_of(positions_of_digit(digits(n, q_base), 1))


def scan_powers(p: int, q_base: int, k_range, predicate: str = "no_3ap", L: int = 3) -> Tuple[int, ...]:
    """Exponents ``k`` whose digit-1 positions of ``p**k`` in base ``q_base`` contain no ``L``-term progression.

    ``predicate`` is ``"no_3ap"`` or ``"no_Lap"`` (then ``L`` is used).
    """
    if predicate == "no_3ap":
        L = 3
    elif predicate != "no_Lap":
        raise PreconditionError(f"unknown predicate {predicate!r}")
    if L < 3:
        raise PreconditionError("L must be >= 3")
    if p < 2 or q_base < 2:
        raise PreconditionError("p and q_base must be >= 2")
    ks = _k_values(k_range)
    if len(ks) > get_limits().max_n:
        raise ResourceLimitError("scan range exceeds max_n")
    return tuple(k for k, mask in _power_position_masks(p, q_base, ks) if _kap_in_mask(mask, L) is None)


# --- reciprocals of beta ------------------------------------------------------------

@dataclass(frozen=True)
class BetaScanResult:
    """Exponents whose first ``depth_bits`` fractional binary digits of ``beta**-k`` show no 3-term progression.

    This over-approximates the exceptional set of the infinite expansions.
    ``failed`` lists exponents whose digits could not be certified.
    """

    W: Tuple[int, ...]
    failed: Tuple[int, ...]
    depth_bits: int
    exact: bool


def _as_beta(beta) -> CertifiedReal:
    if isinstance(beta, CertifiedReal):
        return beta
    if isinstance(beta, (int, Fraction)):
        return CertifiedReal.exact(beta)
    return parse_real(str(beta))


def _is_power_of_two(x: Fraction) -> bool:
    n, d = x.numerator, x.denominator
    return d == 1 and n > 1 and n & (n - 1) == 0


def _check_beta(beta: CertifiedReal, max_den: int = 64) -> None:
    if beta.is_exact:
        if beta.center <= 1:
            raise PreconditionError("beta must exceed 1")
        if _is_power_of_two(beta.center):
            raise DegenerateInputError(f"log {beta.center}/log 2 is rational")
        return
    if beta.lo <= 1:
        raise PreconditionError("beta must exceed 1 (certified)")
    b = beta.refine(256) if beta.source is not None else beta
    with iv_precision(256) as ctx:
        interval = ctx.mpf([_mpf(b.lo, ctx), _mpf(b.hi, ctx)])
        lo, hi = iv_bounds(ctx.log(interval) / ctx.log(ctx.mpf(2)))
    # cannot rule out log beta/log 2 = a/d for small d
    for d in range(1, max_den + 1):
        if math.floor(hi * d) >= math.ceil(lo * d):
            raise DegenerateInputError(
                f"log beta/log 2 is not certified irrational: interval meets a fraction with denominator {d}")


def _mpf(f: Fraction, ctx):
    return ctx.mpf(f.numerator) / ctx.mpf(f.denominator)


def _reciprocal_digits(beta: CertifiedReal, k: int, depth: int, cap: int) -> Optional[int]:
    """``floor(beta**-k * 2**depth)``, or ``None`` if it cannot be certified below ``cap`` bits."""
    if beta.is_exact:
        x = beta.center ** -k
        return math.floor(x * (1 << depth))
    prec = max(128, depth + 64 + k.bit_length())
    b = beta
    while prec <= cap:
        b = b.refine(prec) if b.source is not None else b
        with iv_precision(prec) as ctx:
            interval = ctx.mpf([_mpf(b.lo, ctx), _mpf(b.hi, ctx)])
            lo, hi = iv_bounds(interval ** (-k) * ctx.mpf(2) ** depth)
        if math.floor(lo) == math.floor(hi):
            return math.floor(lo)
        if b.source is None:
            return None
        prec *= 2
    return None


def beta_reciprocal_scan(beta, k_range, depth_bits: int, max_prec: Optional[int] = None) -> BetaScanResult:
    """Depth-qualified scan of ``B(beta**-k)`` for 3-term progressions.

    Position ``i`` is the digit of ``2**-i``.
    """
    b = _as_beta(beta)
    _check_beta(b)
    if depth_bits < 1:
        raise PreconditionError("depth_bits must be >= 1")
    cap = max_prec or get_limits().max_prec
    W, failed = [], []
    for k in _k_values(k_range):
        if k < 0:
            raise PreconditionError("k must be >= 0")
        top = _reciprocal_digits(b, k, depth_bits, cap)
        if top is None:
            failed.append(k)
            continue
        # bit j of top is the digit of 2**(j - depth); position depth - j
        mask = _mask_of(depth_bits - j for j in _positions_of_mask(top))
        if _kap_in_mask(mask, 3) is None:
            W.append(k)
    return BetaScanResult(tuple(W), tuple(failed), depth_bits, b.is_exact)


# --- leading-digit frequencies ----------------------------------------------------------

@dataclass(frozen=True)
class FrequencyRow:
    k: int
    m: int
    count: int

    @property
    def frequency(self) -> Fraction:
        return Fraction(self.count, self.m)


def window_sqrt(k: int) -> int:
    """``ceil(sqrt(k))``."""
    return 0 if k <= 0 else math.isqrt(k - 1) + 1


def _orbit_cf(p: int, q: int):
    from .contfrac import cf_expand
    alpha = log_ratio(p, q, 256)
    frac = alpha - alpha.floor()
    return cf_expand(frac, 200)


def window_from_discrepancy(k: int, q: int, cf, C=1) -> int:
    """``ceil(log_q(1/D_k))`` with ``D_k`` the partial-quotient discrepancy bound, at least 1."""
    from .contfrac import discrepancy_bound
    d = discrepancy_bound(k, cf, C).normalized
    if d >= 1:
        return 1
    m = 1
    power = q
    while power * d < 1:       # smallest m with q**m >= 1/d
        power *= q
        m += 1
    return m


def digit_frequency_sweep(p: int, q: int, k_range, word="1", policy: str = "sqrt", C=1) -> Tuple[FrequencyRow, ...]:
    """Occurrences of ``word`` among the leading ``m(k)`` base-``q`` digits of ``p**k``.

    ``policy`` is ``"sqrt"`` (``m = ceil(sqrt k)``) or ``"discrepancy"``.
    ``m`` is clamped to ``[len(word), number of digits]``.
    """
    if multiplicatively_dependent(p, q):
        raise DegenerateInputError(f"log {p}/log {q} is rational")
    w = _word_bytes(word)
    if not w or any(x >= q for x in w):
        raise PreconditionError("word must be nonempty with digits below q")
    cf = _orbit_cf(p, q) if policy == "discrepancy" else None
    if policy not in ("sqrt", "discrepancy"):
        raise PreconditionError(f"unknown window policy {policy!r}")
    ks = _k_values(k_range)
    if len(ks) > get_limits().max_n:
        raise ResourceLimitError("sweep range exceeds max_n")
    rows = []
    for k in ks:
        if k < 1:
            continue
        n = pow_checked(p, k)
        m = window_sqrt(k) if policy == "sqrt" else window_from_discrepancy(k, q, cf, C)
        if q == 2:
            total = n.bit_length()
            m = max(len(w), min(m, total))
            if m > total:
                continue
            top = format(n >> (total - m), "b").encode("ascii").translate(_BIN)
        else:
            total = digit_count(n, q)
            m = max(len(w), min(m, total))
            if m > total:
                continue
            top = bytes(_digits_lsd(n // q ** (total - m), q, width=m)[::-1])
        rows.append(FrequencyRow(k, m, kernels.count_word(top, w)))
    return tuple(rows)


_BIN = bytes.maketrans(b"01", b"\x00\x01")


__all__ = [
    "ApWitness", "BlockCount", "BetaScanResult", "find_3ap", "find_kap", "block_count",
    "scan_powers", "beta_reciprocal_scan", "FrequencyRow", "window_sqrt", "window_from_discrepancy",
    "digit_frequency_sweep",
]
