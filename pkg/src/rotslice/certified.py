"""Certified real numbers backed by exact rational bounds.

A :class:`CertifiedReal` stores an exact centre and radius (both
:class:`fractions.Fraction`).  When it was produced from an expression it also
keeps a :class:`NestedEvaluator`, so it can be recomputed at higher precision.
Transcendental evaluation goes through :mod:`mpmath`'s interval context, whose
outward rounding makes every returned interval an enclosure.
"""
from __future__ import annotations

import ast
import math
import re
import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Tuple, Union

from mpmath import iv

from .errors import DegenerateInputError, PrecisionError, ResourceLimitError
from .limits import get_limits

Rational = Union[int, Fraction]
Bounds = Tuple[Fraction, Fraction]

_IV_LOCK = threading.RLock()
BASE_PREC = 64


@contextmanager
def iv_precision(prec: int):
    """Run a block with mpmath's interval context at ``prec`` bits.

    mpmath keeps the precision as global state, so access is serialised.
    """
    with _IV_LOCK:
        old = iv.prec
        iv.prec = prec
        try:
            yield iv
        finally:
            iv.prec = old


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, bc = raw
    man, exp = int(man), int(exp)
    if man == 0:
        if exp != 0 or bc != 0:
            raise PrecisionError("interval endpoint is infinite or nan")
        return Fraction(0)
    man = -man if sign else man
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def iv_bounds(x) -> Bounds:
    """Exact rational endpoints of an mpmath interval."""
    if not hasattr(x, "_mpi_"):
        with iv_precision(iv.prec):
            x = iv.mpf(x)
    a, b = x._mpi_
    return _raw_to_fraction(a), _raw_to_fraction(b)


def ladder_precision(prec: int) -> int:
    """Round ``prec`` up to the ladder ``64 * 2**j``."""
    p = BASE_PREC
    while p < prec:
        p *= 2
    return p


class NestedEvaluator:
    """Maps a precision to enclosing bounds, nested across the precision ladder.

    The interval returned for ``2P`` is intersected with the one for ``P``, so
    refining never widens or moves an enclosure.
    """

    def __init__(self, fn: Callable[[int], Bounds], label: str = "") -> None:
        self._fn = fn
        self._cache: dict[int, Bounds] = {}
        self.label = label

    def __call__(self, prec: int) -> Bounds:
        prec = ladder_precision(prec)
        hit = self._cache.get(prec)
        if hit is not None:
            return hit
        if prec > get_limits().max_prec:
            raise ResourceLimitError(
                f"precision {prec} bits exceeds cap {get_limits().max_prec} ({self.label})"
            )
        lo, hi = self._fn(prec)
        if lo > hi:
            raise PrecisionError(f"evaluator returned an empty interval ({self.label})")
        if prec > BASE_PREC:
            plo, phi = self(prec // 2)
            lo, hi = max(lo, plo), min(hi, phi)
            if lo > hi:
                raise PrecisionError(f"non-overlapping enclosures for {self.label}")
        self._cache[prec] = (lo, hi)
        return lo, hi

    def __repr__(self) -> str:
        return f"NestedEvaluator({self.label!r})"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class CertifiedReal:
    """A real number known to lie in ``[center - radius, center + radius]``."""

    center: Fraction
    radius: Fraction = Fraction(0)
    source: Optional[NestedEvaluator] = field(default=None, compare=False, repr=False)
    prec: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")

    # construction -------------------------------------------------------
    @classmethod
    def exact(cls, x: Rational) -> "CertifiedReal":
        return cls(_as_fraction(x), Fraction(0))

    @classmethod
    def from_bounds(cls, lo: Fraction, hi: Fraction, source=None, prec: int = 0) -> "CertifiedReal":
        if lo > hi:
            raise ValueError("lower bound exceeds upper bound")
        return cls((lo + hi) / 2, (hi - lo) / 2, source, prec)

    @classmethod
    def from_evaluator(cls, source: NestedEvaluator, prec: int = 128) -> "CertifiedReal":
        prec = ladder_precision(prec)
        lo, hi = source(prec)
        if lo == hi:
            return cls(lo, Fraction(0), source, prec)
        return cls.from_bounds(lo, hi, source, prec)

    # accessors ----------------------------------------------------------
    @property
    def lo(self) -> Fraction:
        return self.center - self.radius

    @property
    def hi(self) -> Fraction:
        return self.center + self.radius

    @property
    def is_exact(self) -> bool:
        return self.radius == 0

    def contains(self, x: Rational) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "CertifiedReal") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __float__(self) -> float:
        return float(self.center)

    # refinement ---------------------------------------------------------
    def refine(self, prec: int) -> "CertifiedReal":
        """Recompute at ``prec`` bits; exact values and plain intervals are returned as is."""
        if self.is_exact or self.source is None:
            return self
        prec = ladder_precision(prec)
        if prec <= self.prec:
            return self
        return CertifiedReal.from_evaluator(self.source, prec)

    def tighten(self, eps: Rational) -> "CertifiedReal":
        """Refine until ``radius <= eps``."""
        eps = _as_fraction(eps)
        x = self
        while x.radius > eps:
            if x.source is None:
                raise PrecisionError("cannot refine an interval without a source")
            x = x.refine(max(x.prec, BASE_PREC) * 2)
        return x

    def floor(self) -> int:
        lo, hi = math.floor(self.lo), math.floor(self.hi)
        if lo != hi:
            raise PrecisionError("integer part is not determined at this precision")
        return lo

    # arithmetic ---------------------------------------------------------
    def _combine(self, other, op: Callable[[Bounds, Bounds], Bounds], label: str) -> "CertifiedReal":
        if not isinstance(other, CertifiedReal):
            other = CertifiedReal.exact(_as_fraction(other))
        lo, hi = op((self.lo, self.hi), (other.lo, other.hi))
        source = None
        if not (self.is_exact and other.is_exact):
            a_src = self.source or _constant_source(self)
            b_src = other.source or _constant_source(other)
            source = NestedEvaluator(lambda p: op(a_src(p), b_src(p)), label)
        prec = max(self.prec, other.prec)
        if lo == hi:
            return CertifiedReal(lo, Fraction(0), source, prec)
        return CertifiedReal.from_bounds(lo, hi, source, prec)

    def __add__(self, other):
        return self._combine(other, lambda a, b: (a[0] + b[0], a[1] + b[1]), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, lambda a, b: (a[0] - b[1], a[1] - b[0]), "sub")

    def __rsub__(self, other):
        return CertifiedReal.exact(_as_fraction(other)) - self

    def __mul__(self, other):
        def mul(a, b):
            prods = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
            return min(prods), max(prods)
        return self._combine(other, mul, "mul")

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __repr__(self) -> str:
        if self.is_exact:
            return f"CertifiedReal({self.center})"
        return f"CertifiedReal({float(self.center):.17g} ± {float(self.radius):.3g})"


def _constant_source(x: CertifiedReal) -> NestedEvaluator:
    bounds = (x.lo, x.hi)
    return NestedEvaluator(lambda p: bounds, "constant")


# expressions --------------------------------------------------------------

class _NotExact(Exception):
    pass


_NAMES = {"pi", "e", "golden", "phi"}
_FUNCS = {"log", "sqrt", "exp"}


def _normalise(text: str) -> str:
    text = text.strip().replace("^", "**")
    # shorthand: log2/log3 means log(2)/log(3)
    return re.sub(r"\blog(\d+)\b", r"log(\1)", text)


def _check(node: ast.AST) -> None:
    allowed = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Constant, ast.Name, ast.Call,
               ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd, ast.Load)
    for sub in ast.walk(node):
        if not isinstance(sub, allowed):
            raise ValueError(f"unsupported syntax in real expression: {type(sub).__name__}")
        if isinstance(sub, ast.Name) and sub.id not in _NAMES | _FUNCS:
            raise ValueError(f"unknown name {sub.id!r} in real expression")
        if isinstance(sub, ast.Call):
            if not isinstance(sub.func, ast.Name) or sub.func.id not in _FUNCS or len(sub.args) != 1:
                raise ValueError("only log(x), sqrt(x) and exp(x) are supported")
        if isinstance(sub, ast.Constant) and not isinstance(sub.value, (int, float)):
            raise ValueError("only numeric constants are supported")


def _literal(node: ast.Constant, text: str) -> Fraction:
    # decimals are read from the source text so 0.1 means 1/10 exactly
    segment = ast.get_source_segment(text, node)
    return Fraction(segment if segment is not None else repr(node.value))


def _eval_exact(node, text):
    if isinstance(node, ast.Expression):
        return _eval_exact(node.body, text)
    if isinstance(node, ast.Constant):
        return _literal(node, text)
    if isinstance(node, ast.UnaryOp):
        v = _eval_exact(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a, b = _eval_exact(node.left, text), _eval_exact(node.right, text)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if b == 0:
                raise DegenerateInputError("division by zero in real expression")
            return a / b
        if isinstance(node.op, ast.Pow):
            if b.denominator != 1:
                raise _NotExact
            return a ** int(b)
    raise _NotExact


def _eval_iv(node, text, ctx):
    if isinstance(node, ast.Expression):
        return _eval_iv(node.body, text, ctx)
    if isinstance(node, ast.Constant):
        f = _literal(node, text)
        return ctx.mpf(f.numerator) / ctx.mpf(f.denominator)
    if isinstance(node, ast.Name):
        if node.id == "pi":
            return ctx.pi
        if node.id == "e":
            return ctx.e
        root5 = ctx.sqrt(ctx.mpf(5))
        return (root5 - 1) / 2 if node.id == "golden" else (root5 + 1) / 2
    if isinstance(node, ast.UnaryOp):
        v = _eval_iv(node.operand, text, ctx)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Call):
        arg = _eval_iv(node.args[0], text, ctx)
        return getattr(ctx, node.func.id)(arg)
    if isinstance(node, ast.BinOp):
        a, b = _eval_iv(node.left, text, ctx), _eval_iv(node.right, text, ctx)
        op = node.op
        if isinstance(op, ast.Add):
            return a + b
        if isinstance(op, ast.Sub):
            return a - b
        if isinstance(op, ast.Mult):
            return a * b
        if isinstance(op, ast.Div):
            return a / b
        if isinstance(op, ast.Pow):
            return a ** b
    raise ValueError("unsupported expression")


def parse_real(text: str, prec: int = 128) -> CertifiedReal:
    """Parse an expression such as ``log2/log3``, ``golden`` or ``(sqrt(5)-1)/2``.

    Purely rational expressions evaluate exactly (radius zero).
    """
    norm = _normalise(str(text))
    tree = ast.parse(norm, mode="eval")
    _check(tree)
    try:
        return CertifiedReal.exact(_eval_exact(tree, norm))
    except _NotExact:
        pass

    def evaluate(p: int) -> Bounds:
        with iv_precision(p + 16) as ctx:
            return iv_bounds(_eval_iv(tree, norm, ctx))

    return CertifiedReal.from_evaluator(NestedEvaluator(evaluate, norm), prec)


def log_ratio(p: int, q: int, prec: int = 128) -> CertifiedReal:
    """Certified ``log p / log q`` for integers ``p, q >= 2``."""
    if p < 2 or q < 2:
        raise ValueError("log_ratio requires integers >= 2")

    def evaluate(prec_bits: int) -> Bounds:
        with iv_precision(prec_bits + 16) as ctx:
            return iv_bounds(ctx.log(ctx.mpf(p)) / ctx.log(ctx.mpf(q)))

    return CertifiedReal.from_evaluator(NestedEvaluator(evaluate, f"log{p}/log{q}"), prec)


# exact powers ---------------------------------------------------------------

def iroot(n: int, k: int) -> int:
    """Largest integer r with r**k <= n (n >= 0)."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if n < 2:
        return n
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def exact_rational_power(base: Fraction, exponent: Fraction) -> Optional[Fraction]:
    """``base ** exponent`` when it is rational, else ``None``."""
    base, exponent = Fraction(base), Fraction(exponent)
    if base <= 0:
        raise ValueError("base must be positive")
    d = exponent.denominator
    rn, rd = iroot(base.numerator, d), iroot(base.denominator, d)
    if rn ** d != base.numerator or rd ** d != base.denominator:
        return None
    return Fraction(rn, rd) ** exponent.numerator


@dataclass(frozen=True)
class RationalPower:
    """The positive real ``coef * base ** exponent`` with rational parts.

    Comparisons against rationals are exact: both sides are raised to the
    exponent's denominator.
    """

    coef: Fraction
    base: Fraction
    exponent: Fraction

    def __post_init__(self):
        if self.coef <= 0 or self.base <= 0:
            raise ValueError("RationalPower needs positive coefficient and base")

    def as_fraction(self) -> Optional[Fraction]:
        p = exact_rational_power(self.base, self.exponent)
        return None if p is None else self.coef * p

    def compare(self, x: Rational) -> int:
        """Sign of ``self - x``."""
        x = Fraction(x)
        if x <= 0:
            return 1
        y = x / self.coef                      # compare base**(n/d) with y
        n, d = self.exponent.numerator, self.exponent.denominator
        if n >= 0:
            left, right = self.base ** n, y ** d
        else:
            left, right = Fraction(1), y ** d * self.base ** (-n)
        return (left > right) - (left < right)

    def __le__(self, x):
        return self.compare(x) <= 0

    def __ge__(self, x):
        return self.compare(x) >= 0

    def __lt__(self, x):
        return self.compare(x) < 0

    def __gt__(self, x):
        return self.compare(x) > 0

    def to_certified(self, prec: int = 128) -> CertifiedReal:
        exact = self.as_fraction()
        if exact is not None:
            return CertifiedReal.exact(exact)
        coef, base, expo = self.coef, self.base, self.exponent

        def evaluate(p: int) -> Bounds:
            with iv_precision(p + 16) as ctx:
                num = lambda f: ctx.mpf(f.numerator) / ctx.mpf(f.denominator)
                return iv_bounds(num(coef) * num(base) ** num(expo))

        return CertifiedReal.from_evaluator(NestedEvaluator(evaluate, repr(self)), prec)

    def __float__(self) -> float:
        exact = self.as_fraction()
        if exact is not None:
            return float(exact)
        log_value = (math.log(self.coef.numerator) - math.log(self.coef.denominator)
                     + float(self.exponent) * (math.log(self.base.numerator) - math.log(self.base.denominator)))
        return math.exp(log_value)

    def __str__(self) -> str:
        exact = self.as_fraction()
        if exact is not None:
            return str(exact)
        return f"{self.coef}*({self.base})^({self.exponent})"


# fixed-point orbits ---------------------------------------------------------

@dataclass(frozen=True)
class FixedOrbit:
    """Enclosures of ``{start + k*alpha}`` for ``k < N`` as ``P``-bit fixed-point integers.

    Point ``k`` lies in ``[lows[k], lows[k] + widths[k]] / 2**P`` read modulo 1.
    When ``lows[k] + widths[k] >= 2**P`` the enclosure straddles 0 and the
    point is flagged ambiguous.
    """

    P: int
    lows: Tuple[int, ...]
    widths: Tuple[int, ...]

    @property
    def one(self) -> int:
        return 1 << self.P

    def ambiguous(self, k: int) -> bool:
        return self.lows[k] + self.widths[k] >= self.one

    def any_ambiguous(self) -> bool:
        one = self.one
        return any(lo + w >= one for lo, w in zip(self.lows, self.widths))

    def bounds(self, k: int) -> Bounds:
        return Fraction(self.lows[k], self.one), Fraction(self.lows[k] + self.widths[k], self.one)


def fixed_point_orbit(alpha: CertifiedReal, N: int, P: int, start: Optional[CertifiedReal] = None) -> FixedOrbit:
    """Fixed-point enclosures of the first ``N`` rotation points at ``P`` bits."""
    start = start or CertifiedReal.exact(0)
    a = alpha.refine(P + 16) if alpha.source is not None else alpha
    s = start.refine(P + 16) if start.source is not None else start
    one = 1 << P
    a_lo, a_hi = math.floor(a.lo * one), math.ceil(a.hi * one)
    s_lo, s_hi = math.floor(s.lo * one), math.ceil(s.hi * one)
    a_lo_mod = a_lo % one
    lows, widths = [], []
    x, w = s_lo % one, s_hi - s_lo
    dw = a_hi - a_lo
    for _ in range(N):
        lows.append(x)
        widths.append(w)
        x += a_lo_mod
        if x >= one:
            x -= one
        w += dw
    return FixedOrbit(P, tuple(lows), tuple(widths))
