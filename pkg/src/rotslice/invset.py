"""Digit-restricted invariant sets, their covers, slice counts and the pushing maps.

A set is given by a base, the allowed digits and optionally a finite list of
forbidden words.  Its depth-``n`` cover is the set of closed base-adic cells
``[c/b**n, (c+1)/b**n]`` whose digit word extends to an infinite admissible
sequence.  Admissibility is tracked by a small automaton whose states are the
last ``L-1`` digits (``L`` the longest forbidden word); states with no
infinite continuation are removed.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .certified import CertifiedReal, iv_bounds, iv_precision, log_ratio
from .errors import DegenerateInputError, PreconditionError, ResourceLimitError
from .limits import get_limits

Word = Tuple[int, ...]


class _Automaton:
    """Trimmed suffix automaton for a digit set with forbidden words."""

    def __init__(self, base: int, digits: Sequence[int], forbidden: Sequence[Word]):
        self.base = base
        self.digits = tuple(sorted(digits))
        L = max((len(w) for w in forbidden), default=1)
        self.memory = L - 1
        forb = set(forbidden)

        def bad(word: Word) -> bool:
            return any(word[len(word) - j:] in forb for j in range(1, len(word) + 1))

        start: Word = ()
        states = {start: 0}
        order = [start]
        trans: List[Dict[int, int]] = [{}]
        i = 0
        while i < len(order):
            s = order[i]
            for d in self.digits:
                w = s + (d,)
                if bad(w):
                    continue
                nxt = w[len(w) - self.memory:] if self.memory else ()
                if nxt not in states:
                    states[nxt] = len(order)
                    order.append(nxt)
                    trans.append({})
                trans[i][d] = states[nxt]
            i += 1
        # drop states without an infinite continuation
        alive = set(range(len(order)))
        changed = True
        while changed:
            changed = False
            for s in list(alive):
                if not any(t in alive for t in trans[s].values()):
                    alive.discard(s)
                    changed = True
        self.start_ok = 0 in alive
        remap = {s: j for j, s in enumerate(sorted(alive))}
        self.trans: List[Dict[int, int]] = [
            {d: remap[t] for d, t in trans[s].items() if t in alive} for s in sorted(alive)]
        self.start = remap.get(0, -1)

    @property
    def n_states(self) -> int:
        return len(self.trans)

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n_states, self.n_states))
        for s, row in enumerate(self.trans):
            for t in row.values():
                m[s, t] += 1
        return m

    def step(self, state: int, d: int) -> int:
        """Next state or ``-1`` when the digit is not admissible."""
        return self.trans[state].get(d, -1)

    def run(self, word: Iterable[int]) -> int:
        s = self.start
        for d in word:
            if s < 0:
                return -1
            s = self.trans[s].get(d, -1)
        return s


@dataclass(frozen=True)
class InvariantSetSpec:
    """Closed ``x base mod 1`` invariant set of numbers whose base expansion uses ``allowed_digits`` only.

    ``forbidden_words`` are excluded as consecutive digit blocks (written most
    significant first).
    """

    base: int
    allowed_digits: FrozenSet[int]
    forbidden_words: Tuple[Word, ...] = ()
    label: str = ""

    @cached_property
    def automaton(self) -> _Automaton:
        return _Automaton(self.base, sorted(self.allowed_digits), self.forbidden_words)

    @property
    def is_digit_set(self) -> bool:
        return not self.forbidden_words

    @cached_property
    def dimension(self) -> float:
        """``log #D / log base``; with forbidden words, log of the automaton's spectral radius over ``log base``."""
        if self.is_digit_set:
            return math.log(len(self.allowed_digits)) / math.log(self.base)
        m = self.automaton.matrix()
        if m.size == 0:
            return 0.0
        rho = max(abs(np.linalg.eigvals(m)))
        return math.log(rho) / math.log(self.base) if rho > 1 else 0.0

    def exact_dimension(self) -> Optional[CertifiedReal]:
        """Certified dimension for pure digit sets."""
        if not self.is_digit_set:
            return None
        if len(self.allowed_digits) == 1:
            return CertifiedReal.exact(0)
        return log_ratio(len(self.allowed_digits), self.base) if len(self.allowed_digits) > 1 else None

    def admits(self, word: Iterable[int]) -> bool:
        return self.automaton.run(word) >= 0

    def cell_digits(self, c: int, depth: int) -> Word:
        """Digits (most significant first) of cell index ``c`` at ``depth``."""
        out = []
        for _ in range(depth):
            c, r = divmod(c, self.base)
            out.append(r)
        return tuple(reversed(out))

    def admits_cell(self, c: int, depth: int) -> bool:
        if not 0 <= c < self.base ** depth:
            return False
        return self.admits(self.cell_digits(c, depth))

    def __str__(self) -> str:
        if self.label:
            return self.label
        digits = ",".join(str(d) for d in sorted(self.allowed_digits))
        forb = ";".join("".join(str(d) for d in w) for w in self.forbidden_words)
        return f"{self.base}:{digits}" + (f"/{forb}" if forb else "")


def make_digit_set(base: int, allowed_digits: Iterable[int], forbidden_words: Iterable = (), label: str = "") -> InvariantSetSpec:
    if base < 2:
        raise PreconditionError("base must be >= 2")
    digits = frozenset(int(d) for d in allowed_digits)
    if not digits:
        raise PreconditionError("allowed digit set is empty")
    if any(not 0 <= d < base for d in digits):
        raise PreconditionError(f"digits must lie in [0, {base})")
    words = []
    for w in forbidden_words:
        if isinstance(w, str):
            w = tuple(int(ch, 36) for ch in w)
        w = tuple(int(x) for x in w)
        if not w:
            raise PreconditionError("forbidden words must be nonempty")
        words.append(w)
    spec = InvariantSetSpec(base, digits, tuple(sorted(set(words))), label)
    if not spec.automaton.start_ok:
        raise DegenerateInputError("the forbidden words leave no infinite admissible sequence")
    return spec


PRESETS = {
    "cantor3": (3, (0, 2)),
    "base8-01": (8, (0, 1)),
    "full2": (2, (0, 1)),
    "base4-01": (4, (0, 1)),
    "golden-mean": (2, (0, 1), ("11",)),
}


def parse_set(text: str) -> InvariantSetSpec:
    """A preset name or ``base:d,d,...[/word;word]``."""
    text = text.strip()
    if text in PRESETS:
        base, digits, *rest = PRESETS[text]
        return make_digit_set(base, digits, rest[0] if rest else (), label=text)
    try:
        head, _, forb = text.partition("/")
        base_s, _, digits_s = head.partition(":")
        base = int(base_s)
        digits = [int(d) for d in digits_s.split(",") if d.strip()]
        words = [w.strip() for w in forb.split(";") if w.strip()]
    except ValueError:
        raise PreconditionError(f"cannot parse set {text!r}; use a preset or base:d,d[/word;word]") from None
    return make_digit_set(base, digits, words)


# --- covers -------------------------------------------------------------------

@dataclass(frozen=True)
class CoverReport:
    """Surviving cells at one depth; ``cells`` is ``None`` when only counted."""

    depth: int
    scale: Fraction
    count: int
    cells: Optional[Tuple] = None
    note: str = ""


def _check_depth(n: int) -> None:
    if n < 0:
        raise PreconditionError("depth must be >= 0")
    if n > get_limits().max_depth:
        raise ResourceLimitError(f"depth {n} exceeds max_depth={get_limits().max_depth}")


def cover_count(A: InvariantSetSpec, n: int) -> int:
    """Number of admissible depth-``n`` words (transfer-matrix recursion)."""
    _check_depth(n)
    if A.is_digit_set:
        return len(A.allowed_digits) ** n
    aut = A.automaton
    vec = [0] * aut.n_states
    vec[aut.start] = 1
    for _ in range(n):
        nxt = [0] * aut.n_states
        for s, c in enumerate(vec):
            if c:
                for t in aut.trans[s].values():
                    nxt[t] += c
        vec = nxt
    return sum(vec)


def iter_cells(A: InvariantSetSpec, n: int) -> Iterator[Tuple[int, int]]:
    """``(cell index, automaton state)`` of every admissible depth-``n`` word, in increasing order."""
    aut = A.automaton
    base = A.base
    level = [(0, aut.start)]
    for _ in range(n):
        nxt = []
        for c, s in level:
            for d, t in sorted(aut.trans[s].items()):
                nxt.append((c * base + d, t))
        level = nxt
    return iter(level)


def cover_at_depth(A: InvariantSetSpec, n: int, list_cells: bool = True) -> CoverReport:
    """Cells ``[c/b**n, (c+1)/b**n]`` meeting the set."""
    count = cover_count(A, n)
    cells = None
    note = ""
    if list_cells:
        if count <= get_limits().max_cells:
            cells = tuple(c for c, _ in iter_cells(A, n))
        else:
            note = f"cell list omitted: {count} cells exceed max_cells"
    return CoverReport(n, Fraction(1, A.base ** n), count, cells, note)


class CellCover:
    """The depth-``n`` cover of an invariant set as a closed target for orbit hitting."""

    def __init__(self, A: InvariantSetSpec, n: int):
        _check_depth(n)
        self.spec = A
        self.depth = n
        self.cells_total = A.base ** n
        self.count = cover_count(A, n)
        self.measure = Fraction(self.count, self.cells_total)
        self._cache: Dict[int, bool] = {}

    def admits(self, c: int) -> bool:
        hit = self._cache.get(c)
        if hit is None:
            hit = self._cache[c] = self.spec.admits_cell(c, self.depth)
        return hit

    def intervals(self):
        if self.count > get_limits().max_cells:
            raise ResourceLimitError("cover too large to list as intervals")
        den = self.cells_total
        return [(Fraction(c, den), Fraction(c + 1, den)) for c, _ in iter_cells(self.spec, self.depth)]

    def classify_fixed(self, lo: int, hi: int, P: int) -> Optional[bool]:
        B = self.cells_total
        a, b = lo * B, hi * B
        # cells containing the whole enclosure, then cells touching it
        inner_lo, inner_hi = max(0, -(-b >> P) - 1), min(B - 1, a >> P)
        if any(self.admits(c) for c in range(inner_lo, inner_hi + 1)):
            return True
        first, last = max(0, -(-a >> P) - 1), min(B - 1, b >> P)
        if last - first > 4:
            return None
        if any(self.admits(c) for c in range(first, last + 1)):
            return None
        return False


# --- slices -------------------------------------------------------------------

@dataclass(frozen=True)
class SliceSpec:
    """The line ``y = u x + v``."""

    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))
        if self.u == 0:
            raise DegenerateInputError("slice slope u must be nonzero")


def aligned_depth(base: int, n: int) -> int:
    """Smallest ``d`` with ``base**d >= 2**n``: base-``base`` cells no larger than ``2**-n``."""
    d = 0
    target = 1 << n
    power = 1
    while power < target:
        power *= base
        d += 1
    return d


def _meets_line(cx, X, cy, Y, un, ud, vn, vd) -> bool:
    """Closed rectangle ``[cx/X,(cx+1)/X] x [cy/Y,(cy+1)/Y]`` meets ``y = (un/ud) x + vn/vd``."""
    base = vn * ud * X
    l0 = (un * vd * cx + base) * Y
    l1 = (un * vd * (cx + 1) + base) * Y
    if l0 > l1:
        l0, l1 = l1, l0
    K = ud * vd * X
    return l0 <= (cy + 1) * K and l1 >= cy * K


def slice_cover_series(Ax: InvariantSetSpec, Ay: InvariantSetSpec, slice_: SliceSpec, n: int,
                       keep_cells: bool = False) -> List[CoverReport]:
    """Slice covering counts at binary levels ``0..n`` by branch and bound.

    At level ``j`` the cells are products of depth ``aligned_depth(base, j)``
    cells of each factor, so both sides are at most ``2**-j``.  A node is
    expanded only if its closed rectangle meets the line, which is decided in
    exact integer arithmetic.
    """
    _check_depth(n)
    u, v = slice_.u, slice_.v
    un, ud, vn, vd = u.numerator, u.denominator, v.numerator, v.denominator
    ax, ay = Ax.automaton, Ay.automaton
    bx, by = Ax.base, Ay.base
    cap = get_limits().max_cells
    nodes = [(0, ax.start, 0, ay.start)] if _meets_line(0, 1, 0, 1, un, ud, vn, vd) else []
    dx = dy = 0
    reports = [CoverReport(0, Fraction(1), len(nodes), tuple((0, 0) for _ in nodes) if keep_cells else None)]
    for j in range(1, n + 1):
        ndx, ndy = aligned_depth(bx, j), aligned_depth(by, j)
        X, Y = bx ** ndx, by ** ndy
        nxt = []
        for cx, sx, cy, sy in nodes:
            xs = _extend(ax, bx, cx, sx, ndx - dx)
            ys = _extend(ay, by, cy, sy, ndy - dy)
            for ccx, ssx in xs:
                for ccy, ssy in ys:
                    if _meets_line(ccx, X, ccy, Y, un, ud, vn, vd):
                        nxt.append((ccx, ssx, ccy, ssy))
            if len(nxt) > cap:
                raise ResourceLimitError(f"slice search exceeded max_cells={cap} at level {j}")
        nodes, dx, dy = nxt, ndx, ndy
        cells = tuple(sorted((c[0], c[2]) for c in nodes)) if keep_cells else None
        reports.append(CoverReport(j, Fraction(1, 1 << j), len(nodes), cells, f"x depth {dx}, y depth {dy}"))
    return reports


def _extend(aut: _Automaton, base: int, c: int, s: int, steps: int) -> List[Tuple[int, int]]:
    level = [(c, s)]
    for _ in range(steps):
        level = [(cc * base + d, t) for cc, ss in level for d, t in sorted(aut.trans[ss].items())]
    return level


def slice_cover_count(Ax: InvariantSetSpec, Ay: InvariantSetSpec, slice_: SliceSpec, n: int,
                      keep_cells: bool = False) -> CoverReport:
    return slice_cover_series(Ax, Ay, slice_, n, keep_cells)[-1]


def slice_x_intervals(Ax: InvariantSetSpec, Ay: InvariantSetSpec, slice_: SliceSpec, n: int) -> List[Tuple[Fraction, Fraction]]:
    """Closed ``x``-intervals covering ``{x : (x, u x + v) in Ax x Ay}``, one per surviving cell."""
    rep = slice_cover_count(Ax, Ay, slice_, n, keep_cells=True)
    dx, dy = aligned_depth(Ax.base, n), aligned_depth(Ay.base, n)
    X, Y = Ax.base ** dx, Ay.base ** dy
    u, v = slice_.u, slice_.v
    out = []
    for cx, cy in rep.cells:
        x0, x1 = Fraction(cx, X), Fraction(cx + 1, X)
        t0, t1 = (Fraction(cy, Y) - v) / u, (Fraction(cy + 1, Y) - v) / u
        if t0 > t1:
            t0, t1 = t1, t0
        lo, hi = max(x0, t0), min(x1, t1)
        if lo <= hi:
            out.append((lo, hi))
    out.sort()
    return out


# --- dipoles -------------------------------------------------------------------

@dataclass(frozen=True)
class DirectionSample:
    """Greedy ``delta``-separated directions realised by pairs at distance in ``[1/6, 1.5]``.

    ``cover_count`` is the number of ``delta``-grid squares meeting the point
    set; any ``delta``-square meets at most four grid squares, so
    ``ceil(cover_count / 4)`` is a lower bound for the covering number.
    """

    delta: float
    directions: np.ndarray         # shape (k, 2)
    witnesses: np.ndarray          # shape (k, 2): indices into the point list
    n_points: int
    cover_count: int

    @property
    def count(self) -> int:
        return int(self.directions.shape[0])

    @property
    def implied_bound(self) -> float:
        return 0.1 * math.sqrt(self.count)

    @property
    def covering_lower(self) -> int:
        return -(-self.cover_count // 4)

    def bound_holds(self) -> bool:
        return self.implied_bound <= self.covering_lower


def product_cell_centers(Ax: InvariantSetSpec, Ay: InvariantSetSpec, d: int, translates: int = 1) -> np.ndarray:
    """Centers of all admissible product cells at binary level ``d``, optionally translated by ``{0,1}^2`` or ``{-1,0,1}^2``."""
    dx, dy = aligned_depth(Ax.base, d), aligned_depth(Ay.base, d)
    nx, ny = cover_count(Ax, dx), cover_count(Ay, dy)
    if nx * ny * translates > get_limits().max_cells:
        raise ResourceLimitError("product cover too large for a dipole sample")
    X, Y = Ax.base ** dx, Ay.base ** dy
    xs = (np.array([c for c, _ in iter_cells(Ax, dx)], dtype=np.float64) + 0.5) / X
    ys = (np.array([c for c, _ in iter_cells(Ay, dy)], dtype=np.float64) + 0.5) / Y
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    return translate_points(pts, translates)


def translate_points(pts: np.ndarray, translates: int) -> np.ndarray:
    if translates == 1:
        return pts
    if translates == 4:
        shifts = [(i, j) for i in (0, 1) for j in (0, 1)]
    elif translates == 9:
        shifts = [(i, j) for i in (-1, 0, 1) for j in (-1, 0, 1)]
    else:
        raise PreconditionError("translates must be 1, 4 or 9")
    return np.concatenate([pts + np.array(s, dtype=np.float64) for s in shifts])


def dipole_directions(points, delta: float, max_pairs: int = 4_000_000) -> DirectionSample:
    """Direction sample of a finite point set (for instance cell centers)."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    n = pts.shape[0]
    if delta <= 0:
        raise PreconditionError("delta must be positive")
    cover = len({(int(math.floor(x / delta)), int(math.floor(y / delta))) for x, y in pts})
    if n < 2:
        return DirectionSample(delta, np.zeros((0, 2)), np.zeros((0, 2), dtype=np.int64), n, cover)
    if n * (n - 1) > max_pairs:
        raise ResourceLimitError(f"{n} points give too many pairs; coarsen the cover")
    i, j = np.nonzero(~np.eye(n, dtype=bool))
    diff = pts[j] - pts[i]
    dist = np.hypot(diff[:, 0], diff[:, 1])
    keep = (dist >= 1 / 6) & (dist <= 1.5)
    i, j, diff, dist = i[keep], j[keep], diff[keep], dist[keep]
    unit = diff / dist[:, None]
    chosen = kernels.greedy_directions(np.ascontiguousarray(unit[:, 0]), np.ascontiguousarray(unit[:, 1]), float(delta))
    return DirectionSample(delta, unit[chosen], np.column_stack([i[chosen], j[chosen]]), n, cover)


# --- sum decomposition ---------------------------------------------------------------

@dataclass(frozen=True)
class SumDecomposition:
    """``A ⊆ A_I + A_II mod 1`` with both parts ``x 2**(N M)`` invariant.

    ``D`` is the depth-``M`` binary digit set.  A base-``2**(N M)`` digit of
    ``A_I`` is ``sum_{t < n_low} 2**(t M) d_t`` and one of ``A_II`` is
    ``sum_{t >= n_low} 2**(t M) d_t`` with every ``d_t`` in ``D``.
    """

    M: int
    N: int
    n_low: int
    D: Tuple[int, ...]
    dim_tilde: float
    dim_I: float
    dim_II: float

    @property
    def count_I(self) -> int:
        return len(self.D) ** self.n_low

    @property
    def count_II(self) -> int:
        return len(self.D) ** (self.N - self.n_low)

    @property
    def base(self) -> int:
        return 1 << (self.N * self.M)

    def split_digit(self, a: int) -> Tuple[int, int]:
        """Split a base-``2**(N M)`` digit into its ``A_I`` and ``A_II`` parts."""
        low_bits = self.n_low * self.M
        return a & ((1 << low_bits) - 1), (a >> low_bits) << low_bits

    def in_D_I(self, a: int) -> bool:
        return a >> (self.n_low * self.M) == 0 and self._blocks_ok(a, self.n_low)

    def in_D_II(self, a: int) -> bool:
        low_bits = self.n_low * self.M
        return a & ((1 << low_bits) - 1) == 0 and self._blocks_ok(a >> low_bits, self.N - self.n_low)

    def _blocks_ok(self, a: int, blocks: int) -> bool:
        Dset = set(self.D)
        mask = (1 << self.M) - 1
        for _ in range(blocks):
            if a & mask not in Dset:
                return False
            a >>= self.M
        return a == 0


def sum_decompose(A2: InvariantSetSpec, s_target: float, eps: float, max_N: int = 4096) -> SumDecomposition:
    """Split a set invariant under ``x 2**k`` into two sets whose dimensions add up to the original's.

    ``M`` is the first multiple of ``k`` with ``2**((s - eps/2) M) <= N_M <= 2**((s + eps/2) M)``
    where ``N_M`` counts depth-``M`` dyadic cells; then the smallest ``N``
    with some ``n_low`` in ``[1, N]`` giving ``|n_low/N dim - s_target| <= eps``.
    """
    k = A2.base.bit_length() - 1
    if A2.base != 1 << k:
        raise PreconditionError("sum_decompose needs a base that is a power of 2")
    s = A2.dimension
    if not 0 < s_target < s:
        raise PreconditionError(f"s_target must lie in (0, {s:.6g})")
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    cap = get_limits().max_depth
    for depth in range(1, cap // k + 1):
        M = depth * k
        NM = cover_count(A2, depth)
        if 2 ** ((s - eps / 2) * M) <= NM <= 2 ** ((s + eps / 2) * M):
            break
    else:
        raise ResourceLimitError("no depth within max_depth satisfies the count sandwich")
    if NM > get_limits().max_cells:
        raise ResourceLimitError("digit set D too large")
    D = tuple(c for c, _ in iter_cells(A2, depth))
    dim_tilde = math.log(len(D)) / (M * math.log(2))
    for N in range(1, max_N + 1):
        n_low = round(s_target * N / dim_tilde)
        for cand in sorted({max(1, min(N, n_low + off)) for off in (-1, 0, 1)},
                           key=lambda c: abs(c * dim_tilde / N - s_target)):
            dim_I = cand * dim_tilde / N
            if abs(dim_I - s_target) <= eps:
                return SumDecomposition(M, N, cand, D, dim_tilde, dim_I, dim_tilde - dim_I)
    raise ResourceLimitError("no block split found within max_N")


def sample_element_digits(A: InvariantSetSpec, length: int, rng: random.Random) -> Word:
    """A random admissible word of ``length`` digits (uniform choice at each step)."""
    aut = A.automaton
    s = aut.start
    out = []
    for _ in range(length):
        d, s = rng.choice(sorted(aut.trans[s].items()))
        out.append(d)
    return tuple(out)


# --- pushing maps ----------------------------------------------------------------------

@dataclass(frozen=True)
class ContractResult:
    """Iterates of a contracting map started on the diagonal."""

    final: Tuple[Fraction, Fraction]
    y_divisions: int               # how many steps also rescaled y


def push_powers(k: int, x: Optional[Fraction] = None, y: Optional[Fraction] = None) -> ContractResult:
    """``T(x,y) = (x/3, y)`` if ``3y < 4x`` else ``(x/3, y/4)``, applied ``k`` times from ``(3**k, 3**k)``."""
    x = Fraction(3 ** k) if x is None else Fraction(x)
    y = Fraction(3 ** k) if y is None else Fraction(y)
    jumps = 0
    for _ in range(k):
        if 3 * y < 4 * x:
            x = x / 3
        else:
            x, y = x / 3, y / 4
            jumps += 1
    return ContractResult((x, y), jumps)


def push_beta(beta: Fraction, k: int) -> ContractResult:
    """``T(x,y) = (beta x, y)`` if ``2**M y > beta x`` else ``(beta x, 2**M y)``, from ``(beta**-k, beta**-k)``.

    ``M = ceil(log beta / log 2)``; ``beta`` must be an exact rational that is not a power of 2.
    """
    beta = Fraction(beta)
    if beta <= 1:
        raise PreconditionError("beta must exceed 1")
    M = 0
    while (1 << M) < beta:
        M += 1
    if (1 << M) == beta:
        raise DegenerateInputError("beta is a power of 2")
    x = y = beta ** -k
    jumps = 0
    for _ in range(k):
        if (1 << M) * y > beta * x:
            x = beta * x
        else:
            x, y = beta * x, (1 << M) * y
            jumps += 1
    return ContractResult((x, y), jumps)


def floor_n_log2_log3(n: int) -> int:
    """``floor(n log 2 / log 3)``, the largest ``m`` with ``3**m <= 2**n``."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    m = int(n * 0.6309297535714574)
    p2 = 1 << n
    while 3 ** m > p2:
        m -= 1
    while 3 ** (m + 1) <= p2:
        m += 1
    return m


@dataclass(frozen=True)
class PushResult:
    """Trace of the expanding pair map.

    ``thetas[n]`` is the certified ``log(|dy_n| / |dx_n|)``; ``predicted[n]``
    the certified ``log 3 {n log2/log3} + theta_0``.
    """

    x: Tuple[Fraction, Fraction]
    y: Tuple[Fraction, Fraction]
    wraps: Tuple[bool, ...]
    thetas: Tuple[CertifiedReal, ...]
    predicted: Tuple[CertifiedReal, ...]
    window_checked: bool
    window_ok: Optional[bool]

    def trace_consistent(self) -> bool:
        return all(t.lo <= p.hi and p.lo <= t.hi for t, p in zip(self.thetas, self.predicted))


def _log_interval(x: Fraction, prec: int) -> CertifiedReal:
    with iv_precision(prec) as ctx:
        lo, hi = iv_bounds(ctx.log(ctx.mpf(x.numerator) / ctx.mpf(x.denominator)))
    return CertifiedReal.from_bounds(lo, hi)


def pair_push(x, y, k: int, prec: int = 128) -> PushResult:
    """Apply ``((t1,t2),t) -> ((t1,2t2) or (3t1,2t2), t + log2/log3 mod 1)`` to both points ``k`` times.

    The first branch is taken when ``t + alpha <= 1``; starting from
    ``t = 0`` this happens at step ``n`` exactly when ``floor((n+1) alpha) = floor(n alpha)``.
    """
    x = (Fraction(x[0]), Fraction(x[1]))
    y = (Fraction(y[0]), Fraction(y[1]))
    d1, d2 = y[0] - x[0], y[1] - x[1]
    if d1 == 0 or d2 == 0:
        raise DegenerateInputError("segment is parallel to an axis or degenerate")
    if k < 0:
        raise PreconditionError("k must be >= 0")
    theta0 = _log_interval(abs(d2 / d1), prec)
    log3 = _log_interval(Fraction(3), prec)
    thetas, predicted, wraps = [theta0], [theta0], []
    X, Y = list(x), list(y)
    alpha = log_ratio(2, 3, prec)
    prev = 0
    for n in range(1, k + 1):
        cur = floor_n_log2_log3(n)
        wrap = cur > prev
        prev = cur
        wraps.append(wrap)
        if wrap:
            X[0] *= 3
            Y[0] *= 3
        X[1] *= 2
        Y[1] *= 2
        thetas.append(_log_interval(abs((Y[1] - X[1]) / (Y[0] - X[0])), prec))
        frac = alpha * n - cur
        predicted.append(log3 * frac + theta0)
    sep2 = d1 * d1 + d2 * d2
    lo, hi = Fraction(1, 4 ** (k + 1)), Fraction(1, 4 ** k)
    checked = lo <= sep2 <= hi and abs(d2) >= abs(d1)
    ok = None
    if checked:
        e1, e2 = Y[0] - X[0], Y[1] - X[1]
        final2 = e1 * e1 + e2 * e2
        ok = Fraction(1, 36) <= final2 <= Fraction(9, 4)
    return PushResult(tuple(X), tuple(Y), tuple(wraps), tuple(thetas), tuple(predicted), checked, ok)


__all__ = [
    "InvariantSetSpec", "SliceSpec", "CoverReport", "CellCover", "DirectionSample", "SumDecomposition",
    "ContractResult", "PushResult", "PRESETS", "make_digit_set", "parse_set", "cover_count",
    "cover_at_depth", "iter_cells", "aligned_depth", "slice_cover_series", "slice_cover_count",
    "slice_x_intervals", "product_cell_centers", "translate_points", "dipole_directions",
    "sum_decompose", "sample_element_digits", "push_powers", "push_beta", "floor_n_log2_log3", "pair_push",
]
