"""Command-line driver: one subcommand per experiment, plus ``run`` and ``rerun``.

Every subcommand writes a :class:`~rotslice.tables.ResultTable`.  The table
header repeats the complete resolved configuration, so

    rotslice run CONFIG         # config file of key = value lines
    rotslice rerun OUTPUT       # reuse the header of an earlier table

reproduce the table byte for byte.  Wall-clock time never enters the table;
it goes to ``OUTPUT.timing`` when an output file is given.
"""
from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import apscan, bigpow, casino, contfrac, invset, rotation, sparse
from .certified import log_ratio, parse_real
from .errors import ConfigError, RotsliceError
from .limits import Limits, set_limits
from .tables import ResultTable, fmt, fmt_decimal, parse_config_text, write_atomic


# --- parameter types -----------------------------------------------------------------

def _int(text: str) -> int:
    return int(text.strip())


def _frac(text: str) -> Fraction:
    return Fraction(text.strip())


def _intlist(text: str) -> Tuple[int, ...]:
    return tuple(int(t) for t in text.split(",") if t.strip())


def _fraclist(text: str) -> Tuple[Fraction, ...]:
    return tuple(Fraction(t.strip()) for t in text.split(",") if t.strip())


def _str(text: str) -> str:
    return text.strip()


def _real(text: str) -> str:
    parse_real(text)          # validate, keep the source text
    return text.strip()


def _choice(*options):
    def conv(text: str) -> str:
        t = text.strip()
        if t not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return t
    return conv


@dataclass(frozen=True)
class Param:
    name: str
    conv: Callable[[str], object]
    default: Optional[str] = None       # None means required
    help: str = ""


def common_params() -> List[Param]:
    """Resource caps; defaults come from the ROTSLICE_MAX_* environment variables."""
    env = Limits.from_env()
    return [
        Param("max-bits", _int, str(env.max_bits), "bit cap for single integers"),
        Param("max-prec", _int, str(env.max_prec), "precision cap in bits"),
        Param("max-depth", _int, str(env.max_depth), "digit depth cap"),
        Param("max-n", _int, str(env.max_n), "cap on orbit lengths and ranges"),
        Param("max-cells", _int, str(env.max_cells), "cap on listed cells"),
    ]


@dataclass(frozen=True)
class Command:
    name: str
    params: Tuple[Param, ...]
    run: Callable[[Dict[str, object], ResultTable], None]
    columns: Tuple[str, ...]
    help: str


COMMANDS: Dict[str, Command] = {}


def command(name: str, columns: Sequence[str], params: Sequence[Param], help: str = ""):
    def deco(fn):
        COMMANDS[name] = Command(name, tuple(params), fn, tuple(columns), help or (fn.__doc__ or "").strip())
        return fn
    return deco


def _set(text: str):
    return invset.parse_set(text)


# --- subcommands ---------------------------------------------------------------------

@command("power-digits", ["position"], [
    Param("p", _int, None), Param("k", _int, None), Param("base", _int, "2"),
    Param("digit", _int, "1"), Param("leading", _int, "0", "also report this many leading digits")])
def _power_digits(c, t):
    """Positions (1 = least significant) of a digit in p**k."""
    e = bigpow.digits(bigpow.pow_checked(c["p"], c["k"]), c["base"])
    t.meta("length", len(e))
    if c["leading"]:
        t.meta("leading", "".join(str(d) for d in bigpow.leading_digits(c["p"], c["k"], c["base"], c["leading"])))
    for i in bigpow.positions_of_digit(e, c["digit"]):
        t.add(i)


@command("ap-scan", ["k"], [
    Param("p", _int, "3"), Param("q", _int, "2"), Param("k-min", _int, "0"), Param("k-max", _int, None),
    Param("L", _int, "3", "progression length")])
def _ap_scan(c, t):
    """Exponents k whose digit-1 positions in p**k have no L-term progression."""
    W = apscan.scan_powers(c["p"], c["q"], (c["k-min"], c["k-max"]), "no_Lap", c["L"])
    n = c["k-max"]
    t.meta("count", len(W))
    if n >= 1:
        t.meta("density_1_to_kmax", Fraction(sum(1 for k in W if k >= 1), n))
    for k in W:
        t.add(k)


@command("beta-scan", ["k", "status"], [
    Param("beta", _real, None), Param("k-min", _int, "1"), Param("k-max", _int, None),
    Param("depth", _int, "64", "binary digits examined")])
def _beta_scan(c, t):
    """Depth-limited scan of beta**-k for 3-term progressions of digit-1 positions."""
    r = apscan.beta_reciprocal_scan(c["beta"], (c["k-min"], c["k-max"]), c["depth"])
    t.meta("depth_bits", r.depth_bits)
    t.meta("note", "no_3ap_at_depth is an over-approximation of the infinite-expansion set")
    rows = [(k, "no_3ap_at_depth") for k in r.W] + [(k, "uncertified") for k in r.failed]
    for k, s in sorted(rows):
        t.add(k, s)


@command("digit-freq", ["k", "m", "count", "frequency"], [
    Param("p", _int, "3"), Param("q", _int, "2"), Param("k-min", _int, "1"), Param("k-max", _int, None),
    Param("word", _str, "1"), Param("policy", _choice("sqrt", "discrepancy"), "sqrt"), Param("C", _frac, "1")])
def _digit_freq(c, t):
    """Occurrences of a word in the leading m(k) digits of p**k."""
    rows = apscan.digit_frequency_sweep(c["p"], c["q"], (c["k-min"], c["k-max"]), c["word"], c["policy"], c["C"])
    if rows:
        avg = sum(r.frequency for r in rows) / len(rows)
        t.meta("running_average", fmt_decimal(avg, 20))
    t.meta("expected", Fraction(1, c["q"] ** len(c["word"])))
    for r in rows:
        t.add(r.k, r.m, r.count, r.frequency)


@command("cf", ["n", "a", "p", "q"], [
    Param("value", _real, None), Param("terms", _int, "20"), Param("prec", _int, "665", "working precision in bits")])
def _cf(c, t):
    """Certified partial quotients and convergents."""
    x = parse_real(c["value"], 64)
    if not x.is_exact:
        x = x.refine(c["prec"])
        cap = c["prec"]
    else:
        cap = None
    cf = contfrac.cf_expand(x, c["terms"], max_prec=cap)
    t.meta("certified_terms", len(cf))
    t.meta("rational", cf.rational)
    conv = cf.convergents
    for n, a in enumerate(cf.quotients, start=1):
        t.add(n, a, conv[n][0], conv[n][1])


def _cf_for(value: str, terms: int = 300) -> contfrac.ContinuedFraction:
    x = parse_real(value, 256)
    if not x.is_exact and x.hi > 1:
        x = x - x.floor()
    return contfrac.cf_expand(x, terms)


@command("ostrowski", ["j", "q_j", "b_j"], [Param("value", _real, "golden"), Param("N", _int, None)])
def _ostrowski(c, t):
    """Ostrowski expansion of N in the denominators of the value's continued fraction."""
    cf = _cf_for(c["value"])
    rep = contfrac.ostrowski_rep(c["N"], cf)
    qs = cf.denominators
    for j, b in enumerate(rep.coefficients):
        t.add(j, qs[j], b)


@command("disc-bound", ["N", "m", "raw", "normalized"], [
    Param("value", _real, "golden"), Param("N", _intlist, None), Param("C", _frac, "1")])
def _disc_bound(c, t):
    """Partial-quotient discrepancy bound, raw and divided by N."""
    cf = _cf_for(c["value"])
    for N in c["N"]:
        b = contfrac.discrepancy_bound(N, cf, c["C"])
        t.add(N, b.m, b.raw, b.normalized)


@command("gap-check", ["n_max", "ok", "violations", "tightest_i1", "tightest_log10_ratio"], [
    Param("p", _int, "2"), Param("q", _int, "3"), Param("n-max", _int, None),
    Param("c", _frac, "1/100000000000000"), Param("C", _frac, "143/10")])
def _gap_check(c, t):
    """Orbit separation |{i1 a}-{i2 a}| against c / i1**(C-1), a = log p / log q."""
    r = contfrac.gap_check(log_ratio(c["p"], c["q"]), c["n-max"], contfrac.GapBoundParams(c["c"], c["C"]))
    t.meta("fixed_point_bits", r.prec)
    t.add(r.n_max, r.ok, len(r.violations), r.tightest_i1, round(r.tightest_log10_ratio, 6))


@command("orbit", ["k", "point", "radius_bound"], [
    Param("alpha", _real, "golden"), Param("N", _int, None), Param("start", _real, "0"),
    Param("digits", _int, "30")])
def _orbit(c, t):
    """Certified rotation points {start + k alpha}."""
    spec = rotation.OrbitSpec(parse_real(c["alpha"]), c["N"], parse_real(c["start"]), allow_rational=True)
    eps = Fraction(1, 10 ** c["digits"])
    for k, x in enumerate(rotation.orbit_points(spec, eps)):
        t.add(k, fmt_decimal(x.center, c["digits"]), fmt_decimal(x.radius, 3) if x.radius else "0")


@command("star-disc", ["N", "D_star_lo", "D_star_hi", "N_D_over_logN"], [
    Param("alpha", _real, "golden"), Param("N", _intlist, None)])
def _star_disc(c, t):
    """Certified star discrepancy of orbit prefixes."""
    a = parse_real(c["alpha"])
    for N in c["N"]:
        d = rotation.star_discrepancy_orbit(rotation.OrbitSpec(a, N, allow_rational=True))
        ratio = float(d.hi) * N / math.log(N) if N > 1 else float("nan")
        t.add(N, fmt_decimal(d.lo, 20), fmt_decimal(d.hi, 20), round(ratio, 12))


def _target(c):
    if c["target"] != "set":
        pieces = []
        for part in c["target"].split(","):
            if part.strip():
                a, _, b = part.partition(":")
                pieces.append((Fraction(a), Fraction(b)))
        return rotation.IntervalUnion(pieces)
    return invset.CellCover(_set(c["set"]), c["depth"])


@command("hit-count", ["N", "hits", "fraction"], [
    Param("alpha", _real, "golden"), Param("N", _int, None),
    Param("target", _str, "set", "intervals 'a:b,c:d' or 'set' for a cover"),
    Param("set", _str, "cantor3"), Param("depth", _int, "8"), Param("window", _int, "0"),
    Param("checkpoints", _int, "10")])
def _hit_count(c, t):
    """Orbit hits into a closed target, at evenly spaced prefixes."""
    target = _target(c)
    spec = rotation.OrbitSpec(parse_real(c["alpha"]), c["N"], allow_rational=True)
    hs = rotation.hit_count(spec, target)
    t.meta("target_measure", target.measure)
    t.meta("unresolved", len(hs.unresolved))
    if c["window"]:
        t.meta("window_max_density", Fraction(hs.window_max(c["window"]), c["window"]))
    prefix = hs.prefix
    steps = max(1, c["checkpoints"])
    marks = sorted({max(1, (c["N"] * i) // steps) for i in range(1, steps + 1)}) if c["N"] else []
    for n in marks:
        t.add(n, int(prefix[n]), Fraction(int(prefix[n]), n))


@command("make-set", ["base", "digits", "forbidden", "dimension"], [Param("set", _str, None)])
def _make_set(c, t):
    """Validate an invariant-set description and report its dimension."""
    A = _set(c["set"])
    forb = ";".join("".join(str(d) for d in w) for w in A.forbidden_words)
    t.add(A.base, sorted(A.allowed_digits), forb, round(A.dimension, 15))


@command("cover", ["depth", "count"], [Param("set", _str, None), Param("depth", _int, None)])
def _cover(c, t):
    """Cover counts at depths 0..depth."""
    A = _set(c["set"])
    for n in range(c["depth"] + 1):
        t.add(n, invset.cover_count(A, n))


@command("slice-count", ["level", "count", "count_root"], [
    Param("ax", _str, "cantor3"), Param("ay", _str, "base8-01"), Param("u", _frac, "1"), Param("v", _frac, "0"),
    Param("depth", _int, None)])
def _slice_count(c, t):
    """Product cells meeting y = u x + v at binary levels 0..depth."""
    reps = invset.slice_cover_series(_set(c["ax"]), _set(c["ay"]), invset.SliceSpec(c["u"], c["v"]), c["depth"])
    for r in reps:
        root = round(r.count ** (1 / r.depth), 12) if r.depth else r.count
        t.add(r.depth, r.count, root)


@command("dipole", ["i", "ux", "uy"], [
    Param("ax", _str, "full2"), Param("ay", _str, "full2"), Param("depth", _int, "4"),
    Param("delta", _frac, "1/10"), Param("translates", _choice("1", "4", "9"), "1")])
def _dipole(c, t):
    """Greedy separated dipole directions of a product cover."""
    pts = invset.product_cell_centers(_set(c["ax"]), _set(c["ay"]), c["depth"], int(c["translates"]))
    ds = invset.dipole_directions(pts, float(c["delta"]))
    t.meta("directions", ds.count)
    t.meta("implied_bound", round(ds.implied_bound, 12))
    t.meta("covering_lower", ds.covering_lower)
    t.meta("bound_holds", ds.bound_holds())
    for i, (ux, uy) in enumerate(ds.directions):
        t.add(i, round(float(ux), 12), round(float(uy), 12))


@command("sum-decompose", ["key", "value"], [
    Param("set", _str, "full2"), Param("s", _frac, "1/2"), Param("eps", _frac, "1/10")])
def _sum_decompose(c, t):
    """Split a binary-type set into two sets with additive dimensions."""
    d = invset.sum_decompose(_set(c["set"]), float(c["s"]), float(c["eps"]))
    for key, value in (("M", d.M), ("N", d.N), ("n_low", d.n_low), ("D", d.D), ("count_I", d.count_I),
                       ("count_II", d.count_II), ("dim_tilde", round(d.dim_tilde, 15)),
                       ("dim_I", round(d.dim_I, 15)), ("dim_II", round(d.dim_II, 15))):
        t.add(key, value)


@command("pair-push", ["n", "value", "predicted", "note"], [
    Param("mode", _choice("powers", "beta", "pair"), "pair"), Param("k", _int, None),
    Param("beta", _frac, "3"), Param("x1", _frac, "0"), Param("x2", _frac, "0"),
    Param("y1", _frac, "1/4096"), Param("y2", _frac, "1/2048")])
def _pair_push(c, t):
    """Iterates of the pushing maps."""
    k = c["k"]
    if c["mode"] == "powers":
        r = invset.push_powers(k)
        t.add(k, r.final[0], r.final[1], f"y_divisions={r.y_divisions}")
        return
    if c["mode"] == "beta":
        r = invset.push_beta(c["beta"], k)
        t.add(k, r.final[0], r.final[1], f"y_rescales={r.y_divisions}")
        return
    r = invset.pair_push((c["x1"], c["x2"]), (c["y1"], c["y2"]), k)
    t.meta("trace_consistent", r.trace_consistent())
    t.meta("window_checked", r.window_checked)
    t.meta("window_ok", "" if r.window_ok is None else r.window_ok)
    t.meta("final_x", f"{r.x[0]},{r.x[1]}")
    t.meta("final_y", f"{r.y[0]},{r.y[1]}")
    # value is the slope angle log|dy/dx|, predicted is log3 {n alpha} + theta0
    for n, (th, pr) in enumerate(zip(r.thetas, r.predicted)):
        wrap = "start" if n == 0 else ("wrap" if r.wraps[n - 1] else "no-wrap")
        t.add(n, fmt_decimal(th.center, 20), fmt_decimal(pr.center, 20), wrap)


@command("sparse-index", ["k", "hit"], [
    Param("source", _choice("l0", "slice"), "slice"), Param("ax", _str, "cantor3"), Param("ay", _str, "base8-01"),
    Param("u", _frac, "1"), Param("v", _frac, "0"), Param("depth", _int, "40"), Param("a", _frac, "0"),
    Param("kmax", _int, "35")])
def _sparse_index(c, t):
    """Annulus hits of a set near a point."""
    if c["source"] == "l0":
        rep = [Fraction(0)] + [Fraction(1, 2 ** k) for k in range(c["kmax"] + 3)]
    else:
        rep = invset.slice_x_intervals(_set(c["ax"]), _set(c["ay"]), invset.SliceSpec(c["u"], c["v"]), c["depth"])
    si = sparse.sparse_index(rep, c["a"], c["kmax"])
    t.meta("over_approximation", si.over_approximation)
    t.meta("density", Fraction(len(si.hits), c["kmax"] + 1))
    hits = set(si.hits)
    for k in range(c["kmax"] + 1):
        t.add(k, k in hits)


def _integer_set(text: str, N: int) -> List[int]:
    if text == "evens":
        return list(range(0, N + 1, 2))
    if text == "squares":
        return [i * i for i in range(math.isqrt(N) + 1)]
    if text.startswith("ap-scan:"):
        p, q = (int(x) for x in text.split(":")[1].split(","))
        return list(apscan.scan_powers(p, q, (0, N)))
    return [int(x) for x in text.split(",") if x.strip()]


@command("density", ["measure", "value"], [
    Param("W", _str, None, "evens, squares, ap-scan:p,q or an explicit list"), Param("N", _int, None),
    Param("windows", _intlist, "100")])
def _density(c, t):
    """Natural, window and Banach-type densities of an integer set over [1, N]."""
    rep = sparse.density(_integer_set(c["W"], c["N"]), c["N"], list(c["windows"]))
    for label, val in zip(("natural_N", "natural_N_10", "natural_N_100"), rep.natural):
        t.add(label, val)
    t.add("upper", rep.upper)
    t.add("lower", rep.lower)
    for w in c["windows"]:
        t.add(f"window_max_{w}", rep.window_max[w])
        t.add(f"banach_{w}", rep.banach[w])


def _slice_or_set_reports(c):
    if c["source"] == "set":
        A = _set(c["set"])
        return [invset.cover_at_depth(A, n, list_cells=False) for n in range(c["depth-min"], c["depth-max"] + 1)]
    reps = invset.slice_cover_series(_set(c["ax"]), _set(c["ay"]), invset.SliceSpec(c["u"], c["v"]), c["depth-max"])
    return reps[c["depth-min"]:]


_SOURCE_PARAMS = [
    Param("source", _choice("set", "slice"), "set"), Param("set", _str, "cantor3"),
    Param("ax", _str, "cantor3"), Param("ay", _str, "base8-01"), Param("u", _frac, "1"), Param("v", _frac, "0"),
    Param("depth-min", _int, "4"), Param("depth-max", _int, "12")]


@command("dim-fit", ["depth", "count", "ratio"], list(_SOURCE_PARAMS))
def _dim_fit(c, t):
    """Least-squares box-dimension slope over cover counts."""
    reps = _slice_or_set_reports(c)
    fit = sparse.box_dim_fit(reps)
    t.meta("slope", round(fit.slope, 12))
    positive = [r for r in reps if r.count > 0]
    for r, ratio in zip(positive, fit.ratios):
        t.add(r.depth, r.count, round(ratio, 12))


@command("gauge-sum", ["depth", "cells", "gauge_sum"], list(_SOURCE_PARAMS) + [
    Param("s", _frac, "1/27"), Param("coef", _frac, "27")])
def _gauge_sum(c, t):
    """Gauge sums exp(-(-log d)**(coef s)) over covers; d is the cell side."""
    for r in _slice_or_set_reports(c):
        if r.depth == 0:
            continue
        g = r.count * math.exp(-((-math.log(r.scale)) ** float(c["coef"] * c["s"])))
        t.add(r.depth, r.count, repr(g))


@command("casino-sim", ["seed", "target", "hits", "cells_hit", "estimate"], [
    Param("p", _fraclist, "1/2"), Param("K", _str, "evens"), Param("N", _int, "100000"), Param("r", _int, "8"),
    Param("alpha", _real, "golden"), Param("seed", _int, "0"), Param("replicas", _int, "1")])
def _casino(c, t):
    """Coin-driven hits along the rotation and their dyadic closure estimates."""
    cells = casino.OrbitCells(parse_real(c["alpha"]), c["N"], c["r"])
    probs = tuple(float(p) for p in c["p"])
    t.meta("delta", Fraction(1) - sum(c["p"]))
    t.meta("rho", casino.lower_density(c["K"]))
    for seed in range(c["seed"], c["seed"] + c["replicas"]):
        model = casino.CoinModel(seed, probs)
        for i, h in enumerate(casino.simulate_hits(model, c["K"], c["N"])):
            est = casino.closure_measure(cells, h)
            t.add(seed, i, int(h.size), est.cells_hit, est.estimate)


# --- driver ------------------------------------------------------------------------

def resolve(name: str, raw: Dict[str, str], lines: Optional[Dict[str, int]] = None) -> Tuple[Dict[str, object], List[Tuple[str, str]], Optional[str]]:
    """Validate raw strings; return parsed values, the canonical echo and the output path."""
    if name not in COMMANDS:
        raise ConfigError(f"unknown command {name!r}", line=(lines or {}).get("command"), field="command")
    cmd = COMMANDS[name]
    schema = list(cmd.params) + common_params()
    params = {p.name: p for p in schema}
    lines = lines or {}
    raw = dict(raw)
    output = raw.pop("output", None)
    for key in raw:
        if key not in params:
            raise ConfigError(f"unknown parameter for {name}", line=lines.get(key), field=key)
    values: Dict[str, object] = {}
    echo = [("command", name)]
    for p in schema:
        text = raw.get(p.name, p.default)
        if text is None:
            raise ConfigError("missing required parameter", line=lines.get(p.name), field=p.name)
        try:
            values[p.name] = p.conv(text)
        except (ValueError, ZeroDivisionError, RotsliceError) as exc:
            raise ConfigError(f"invalid value {text!r}: {exc}", line=lines.get(p.name), field=p.name) from None
        echo.append((p.name, _canonical(values[p.name])))
    return values, echo, output


def _canonical(value) -> str:
    if isinstance(value, tuple):
        return ",".join(_canonical(v) for v in value)
    return fmt(value)


def execute(name: str, raw: Dict[str, str], lines: Optional[Dict[str, int]] = None) -> Tuple[str, Optional[str], float]:
    """Run a command; return the rendered table, the output path and the wall time."""
    values, echo, output = resolve(name, raw, lines)
    limits = Limits(values["max-bits"], values["max-prec"], values["max-depth"], values["max-n"], values["max-cells"])
    previous = set_limits(limits)
    cmd = COMMANDS[name]
    table = ResultTable(list(cmd.columns), config=echo)
    t0 = time.perf_counter()
    try:
        cmd.run(values, table)
    finally:
        set_limits(previous)
    return table.render(), output, time.perf_counter() - t0


def load_config(text: str, prefix: str = "") -> Tuple[str, Dict[str, str], Dict[str, int]]:
    entries = parse_config_text(text, prefix)
    raw: Dict[str, str] = {}
    lines: Dict[str, int] = {}
    for no, key, value in entries:
        if key in raw:
            raise ConfigError("duplicate key", line=no, field=key)
        raw[key] = value
        lines[key] = no
    name = raw.pop("command", None)
    if name is None:
        raise ConfigError("config has no 'command' line", field="command")
    return name, raw, lines


def _emit(text: str, output: Optional[str], seconds: float) -> None:
    if output:
        write_atomic(output, text)
        write_atomic(output + ".timing", f"wall_seconds = {seconds:.6f}\n")
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotslice", description="Rotation, digit and slice experiments.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a key = value config file")
    run.add_argument("config")
    run.add_argument("--output", default=None, help="override the output path")
    rerun = sub.add_parser("rerun", help="re-run the configuration echoed in a table")
    rerun.add_argument("table")
    rerun.add_argument("--output", default=None)
    for name, cmd in COMMANDS.items():
        sp = sub.add_parser(name, help=cmd.help.splitlines()[0] if cmd.help else None)
        for p in list(cmd.params) + common_params():
            sp.add_argument(f"--{p.name}", dest=p.name, default=None,
                            help=(p.help + " " if p.help else "") + ("(required)" if p.default is None else f"(default {p.default})"))
        sp.add_argument("--output", default=None, help="write the table here instead of stdout")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            with open(args.config, encoding="utf-8") as fh:
                name, raw, lines = load_config(fh.read())
            if args.output:
                raw["output"] = args.output
        elif args.command == "rerun":
            with open(args.table, encoding="utf-8") as fh:
                name, raw, lines = load_config(fh.read(), prefix="#@")
            lines = {}
            if args.output:
                raw["output"] = args.output
        else:
            name = args.command
            raw = {k: v for k, v in vars(args).items() if k != "command" and v is not None}
            lines = None
        text, output, seconds = execute(name, raw, lines)
        _emit(text, output, seconds)
    except RotsliceError as exc:
        print(f"rotslice: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
