"""Exact powers, digit expansions and certified fractional parts of ``k log p / log q``.

Digit positions are 1-indexed from the least significant digit: the number
``3**23`` written in binary has positions ``1..37`` read from right to left.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .certified import Bounds, CertifiedReal, NestedEvaluator, iv_bounds, iv_precision, log_ratio
from .errors import DegenerateInputError, PrecisionError, PreconditionError, ResourceLimitError
from .limits import get_limits

BigNat = int
PositionSet = Tuple[int, ...]

_BIN_TABLE = bytes.maketrans(b"01", b"\x00\x01")


def position_set(values: Iterable[int]) -> PositionSet:
    """Normalise an iterable of positive integers into a sorted, duplicate-free tuple."""
    out = tuple(sorted(set(int(v) for v in values)))
    if out and out[0] < 1:
        raise PreconditionError("positions are integers >= 1")
    return out


def _check_bits(bits: float, what: str) -> None:
    cap = get_limits().max_bits
    if bits > cap:
        raise ResourceLimitError(f"{what} needs about {int(bits)} bits, cap is {cap}")


def pow_checked(p: int, k: int) -> BigNat:
    """Exactly ``p**k``, refusing results larger than the bit cap."""
    if p < 2 or k < 0:
        raise PreconditionError("pow needs p >= 2 and k >= 0")
    _check_bits(k * math.log2(p), f"{p}**{k}")
    return p ** k


def multiplicatively_dependent(p: int, q: int) -> bool:
    """True when ``p`` and ``q`` are powers of a common integer, i.e. ``log p/log q`` is rational."""
    if p < 2 or q < 2:
        raise PreconditionError("expected integers >= 2")
    while True:
        if p == q:
            return True
        if p > q:
            p, q = q, p
        if q % p:
            return False
        q //= p


def digit_count(n: BigNat, base: int) -> int:
    """Number of base-``base`` digits of ``n`` (zero has none)."""
    if n < 0:
        raise PreconditionError("digit_count of a negative number")
    if n == 0:
        return 0
    if base & (base - 1) == 0:
        w = base.bit_length() - 1
        return (n.bit_length() + w - 1) // w
    est = max(1, int((n.bit_length() - 1) / math.log2(base)))
    power = base ** (est - 1)
    while power > n:
        power //= base
        est -= 1
    while power * base <= n:
        power *= base
        est += 1
    return est


def _digits_lsd(n: int, base: int, width: int = 0) -> list[int]:
    """Base-``base`` digits of ``n``, least significant first, padded to ``width``."""
    out: list[int] = []
    if n.bit_length() <= 4096:
        while n:
            n, r = divmod(n, base)
            out.append(r)
    else:
        # divide and conquer on base**(2**j); rec(x, j) emits exactly 2**(j+1) digits
        powers = [base]
        while powers[-1] * powers[-1] <= n:
            powers.append(powers[-1] * powers[-1])

        def rec(x: int, j: int) -> None:
            if j <= 4:
                for _ in range(1 << (j + 1)):
                    x, r = divmod(x, base)
                    out.append(r)
                return
            hi, lo = divmod(x, powers[j])
            rec(lo, j - 1)
            rec(hi, j - 1)

        rec(n, len(powers) - 1)
        while out and out[-1] == 0:
            out.pop()
    if width and len(out) < width:
        out.extend([0] * (width - len(out)))
    return out


@dataclass(frozen=True)
class DigitExpansion:
    """Base-``base`` digits of a natural number; ``digits[0]`` is position 1."""

    base: int
    digits: Tuple[int, ...]

    def __post_init__(self):
        if self.base < 2:
            raise PreconditionError("base must be >= 2")
        if self.digits and self.digits[-1] == 0:
            raise PreconditionError("leading digit must be nonzero")

    def __len__(self) -> int:
        return len(self.digits)

    def digit(self, i: int) -> int:
        """Digit at 1-indexed position ``i`` (0 beyond the length)."""
        if i < 1:
            raise IndexError("positions start at 1")
        return self.digits[i - 1] if i <= len(self.digits) else 0

    def value(self) -> BigNat:
        n = 0
        for d in reversed(self.digits):
            n = n * self.base + d
        return n

    def msd_first(self) -> Tuple[int, ...]:
        return tuple(reversed(self.digits))

    def to_string(self) -> str:
        """Digits written most significant first; bases above 36 are dot-separated."""
        if not self.digits:
            return "0"
        if self.base <= 36:
            alphabet = "0123456789abcdefghijklmnopqrstuvwxyz"
            return "".join(alphabet[d] for d in reversed(self.digits))
        return ".".join(str(d) for d in reversed(self.digits))


def digits(n: BigNat, base: int) -> DigitExpansion:
    """Exact base-``base`` expansion of ``n``."""
    if n < 0:
        raise PreconditionError("digits of a negative number")
    if base < 2:
        raise PreconditionError("base must be >= 2")
    if base > 2 ** 16:
        raise PreconditionError("bases above 2**16 are not supported")
    if n == 0:
        return DigitExpansion(base, ())
    if base == 2:
        raw = format(n, "b").encode("ascii").translate(_BIN_TABLE)
        return DigitExpansion(2, tuple(raw[::-1]))
    return DigitExpansion(base, tuple(_digits_lsd(n, base)))


def positions_of_digit(e: DigitExpansion, d: int) -> PositionSet:
    """Positions ``i`` (1-indexed) where digit ``d`` occurs."""
    if not 0 <= d < e.base:
        raise PreconditionError(f"digit {d} outside [0, {e.base})")
    return tuple(i + 1 for i, x in enumerate(e.digits) if x == d)


def leading_digits(p: int, k: int, q: int, m: int) -> Tuple[int, ...]:
    """The ``m`` most significant base-``q`` digits of ``p**k``, most significant first."""
    n = pow_checked(p, k)
    total = digit_count(n, q)
    if not 1 <= m <= total:
        raise PreconditionError(f"m={m} outside [1, {total}] for {p}**{k} in base {q}")
    top = n // q ** (total - m)
    return tuple(_digits_lsd(top, q, width=m)[::-1])


def leading_digits_via_orbit(p: int, k: int, q: int, m: int, max_prec: Optional[int] = None) -> Tuple[int, ...]:
    """Same word as :func:`leading_digits`, read off ``q ** {k log p/log q}`` in ``[1, q)``.

    A cross-check: only the fractional part of ``k log p / log q`` is used.
    """
    if k == 0:
        if m != 1:
            raise PreconditionError("p**0 = 1 has a single digit")
        return (1,)
    cap = max_prec or get_limits().max_prec
    prec = 128
    frac = frac_log_orbit(p, q, k, Fraction(1, 2 ** 40))
    while True:
        lo_f, hi_f = frac.lo, frac.hi
        with iv_precision(prec + 16) as ctx:
            x = ctx.mpf([_mp(lo_f, ctx), _mp(hi_f, ctx)])
            lo, hi = iv_bounds(ctx.mpf(q) ** (x + (m - 1)))
        a, b = math.floor(lo), math.floor(hi)
        if a == b:
            return tuple(_digits_lsd(a, q, width=m)[::-1])
        if b == a + 1 and prec >= 512:
            # an enclosure pinned to an integer: the value is exactly b
            # iff q**(t-m) divides p**k, which one exact test settles
            drop = digit_count(pow_checked(p, k), q) - m
            if drop >= 0 and pow_checked(p, k) == b * q ** drop:
                return tuple(_digits_lsd(b, q, width=m)[::-1])
        if prec >= cap:
            raise PrecisionError("leading digits could not be pinned at the precision cap")
        prec *= 2
        frac = frac.refine(max(frac.prec * 2, prec))


def _mp(f: Fraction, ctx):
    return ctx.mpf(f.numerator) / ctx.mpf(f.denominator)


def frac_log_orbit(p: int, q: int, k: int, eps) -> CertifiedReal:
    """Certified fractional part of ``k * log p / log q`` with radius at most ``eps``."""
    if multiplicatively_dependent(p, q):
        raise DegenerateInputError(f"log {p}/log {q} is rational")
    if k < 0:
        raise PreconditionError("k must be >= 0")
    if k == 0:
        return CertifiedReal.exact(0)
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    alpha = log_ratio(p, q)
    source = alpha.source
    prec = max(128, k.bit_length() + max(1, -math.floor(math.log2(eps))) + 8)
    cap = get_limits().max_prec
    while True:
        lo, hi = source(prec)
        lo, hi = k * lo, k * hi
        f = math.floor(lo)
        if f == math.floor(hi) and (hi - lo) / 2 <= eps:
            break
        if prec >= cap:
            raise ResourceLimitError("precision cap reached while certifying the fractional part")
        prec *= 2

    def evaluate(bits: int, f=f) -> Bounds:
        a, b = source(bits)
        return k * a - f, k * b - f

    nested = NestedEvaluator(evaluate, f"frac({k}*log{p}/log{q})")
    return CertifiedReal.from_evaluator(nested, prec)


__all__ = [
    "BigNat", "PositionSet", "DigitExpansion", "position_set", "pow_checked", "digits",
    "digit_count", "positions_of_digit", "leading_digits", "leading_digits_via_orbit",
    "frac_log_orbit", "multiplicatively_dependent",
]
