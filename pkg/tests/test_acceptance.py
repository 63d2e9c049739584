"""Acceptance criteria 1 to 12.

Each test records one ``criterion N: PASS|FAIL ...`` line.  Under pytest the
lines are collected into a terminal summary section; run this file directly
to print them without pytest.
"""
import math
import os
import tempfile
import time
from fractions import Fraction

import mpmath

from rotslice import apscan, bigpow, casino, cli, contfrac, invset, rotation, sparse
from rotslice.certified import log_ratio, parse_real

import oracles

LINES = []

POW23_ONES = (1, 2, 4, 7, 12, 14, 15, 16, 18, 19, 20, 21, 23, 25, 26, 28, 30, 31, 32, 33, 35, 37)
L0 = [Fraction(0)] + [Fraction(1, 2 ** k) for k in range(0, 60)]


def record(n, checks, seconds, limit):
    """``checks`` maps a label to ``(ok, detail)``; the runtime budget is one more check."""
    checks = dict(checks)
    if limit is not None:
        checks["runtime"] = (seconds < limit, f"{seconds:.3f}s < {limit}s")
    ok = all(c[0] for c in checks.values())
    parts = "; ".join(f"{k} {'ok' if c[0] else 'FAILED'} ({c[1]})" for k, c in checks.items())
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}: {parts}"
    LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_pow23_positions():
    bigpow.positions_of_digit(bigpow.digits(bigpow.pow_checked(3, 23), 2), 1)
    best = math.inf
    for _ in range(50):
        t0 = time.perf_counter()
        got = bigpow.positions_of_digit(bigpow.digits(bigpow.pow_checked(3, 23), 2), 1)
        best = min(best, time.perf_counter() - t0)
    record(1, {"set": (tuple(got) == POW23_ONES, f"{len(got)} positions")}, best, 0.001)


def test_criterion_02_power_scan():
    t0 = time.perf_counter()
    scans = {N: apscan.scan_powers(3, 2, (0, N), "no_3ap") for N in (100, 1000, 5000)}
    seconds = time.perf_counter() - t0
    brute = tuple(k for k in range(201) if not oracles.has_3ap(oracles.positions(3 ** k, 2, 1)))
    small = tuple(k for k in scans[1000] if k <= 200)
    ratios = [sum(1 for k in scans[N] if k >= 1) / N for N in (100, 1000, 5000)]
    record(2, {
        "oracle k<=200": (small == brute, f"W = {small}"),
        "nonincreasing": (ratios[0] >= ratios[1] >= ratios[2], "ratios " + ", ".join(f"{r:.4g}" for r in ratios)),
        "<=0.1 at 5000": (ratios[2] <= 0.1, f"{ratios[2]:.4g}"),
    }, seconds, 300)


def test_criterion_03_digit_frequency():
    t0 = time.perf_counter()
    ones = apscan.digit_frequency_sweep(3, 2, (1, 5000), "1", "sqrt")
    pairs = apscan.digit_frequency_sweep(3, 2, (1, 5000), "11", "sqrt")
    seconds = time.perf_counter() - t0
    avg1 = float(sum(r.frequency for r in ones) / len(ones))
    avg11 = float(sum(r.frequency for r in pairs) / len(pairs))
    window_ok = all(r.m == apscan.window_sqrt(r.k) for r in ones)
    record(3, {
        "m(k)=ceil(sqrt k)": (window_ok, f"{len(ones)} rows"),
        "digit 1": (abs(avg1 - 0.5) <= 0.02, f"average {avg1:.4f}"),
        "block 11": (abs(avg11 - 0.25) <= 0.03, f"average {avg11:.4f}"),
    }, seconds, 600)


def test_criterion_04_continued_fractions():
    t0 = time.perf_counter()
    cf = contfrac.cf_expand(log_ratio(2, 3).refine(665), 200)
    golden = contfrac.cf_expand(parse_real("golden", 512), 40)
    seconds = time.perf_counter() - t0
    expected = oracles.cf_mp(lambda: mpmath.log(2) / mpmath.log(3), len(cf) + 1)[1:]
    errs = all(cf.convergent_error_ok(n) for n in range(len(cf)))
    record(4, {
        ">=20 quotients": (len(cf) >= 20, f"{len(cf)} certified"),
        "mpmath agrees": (list(cf.quotients) == expected, f"first {cf.quotients[:8]}"),
        "convergent bound": (errs, f"n < {len(cf)}"),
        "golden all ones": (len(golden) >= 20 and set(golden.quotients) == {1}, f"{len(golden)} terms"),
    }, seconds, 1.0)


def test_criterion_05_ostrowski():
    cfs = {
        "golden": contfrac.cf_expand(parse_real("golden", 512), 40),
        "sqrt(2)-1": contfrac.cf_expand(parse_real("sqrt(2) - 1", 512), 40),
        "log2/log3": contfrac.cf_expand(log_ratio(2, 3).refine(1024), 40),
    }
    t0 = time.perf_counter()
    bad = []
    for name, cf in cfs.items():
        qs = cf.denominators
        for N in range(1, 100001):
            rep = contfrac.ostrowski_rep(N, cf)
            if sum(b * qs[j] for j, b in enumerate(rep.coefficients)) != N or not contfrac.ostrowski_valid(rep, cf):
                bad.append((name, N))
    seconds = time.perf_counter() - t0
    non_unique = []
    for name, cf in cfs.items():
        a, q = list(cf.quotients), list(cf.denominators)
        for N in range(1, 201):
            found = oracles.ostrowski_all(N, a, q)
            got = list(contfrac.ostrowski_rep(N, cf).coefficients)
            while got and got[-1] == 0:
                got.pop()
            if found != [tuple(got)]:
                non_unique.append((name, N, len(found)))
    record(5, {
        "round trip N<=1e5": (not bad, f"{len(bad)} failures over 3 inputs"),
        "unique N<=200": (not non_unique, f"{len(non_unique)} failures"),
    }, seconds, 30)


def test_criterion_06_gap_inequality():
    t0 = time.perf_counter()
    r = contfrac.gap_check(log_ratio(2, 3), 10 ** 4)
    seconds = time.perf_counter() - t0
    record(6, {"all pairs": (r.ok and not r.violations,
                             f"tightest i1={r.tightest_i1}, log10(gap/bound)={r.tightest_log10_ratio:.3f}")},
           seconds, 120)


def test_criterion_07_discrepancy_growth():
    t0 = time.perf_counter()
    ratios = {}
    for N in (10 ** 3, 10 ** 4, 10 ** 5):
        d = rotation.star_discrepancy_orbit(rotation.OrbitSpec(parse_real("golden"), N))
        ratios[N] = float(N * d.hi) / math.log(N)
    seconds = time.perf_counter() - t0
    c_fit = max(ratios.values())
    detail = ", ".join(f"N={N}: {v:.4f}" for N, v in ratios.items())
    record(7, {"C_fit <= 5": (c_fit <= 5, f"C_fit={c_fit:.4f}; {detail}")}, seconds, 60)


def test_criterion_08_target_hits():
    t0 = time.perf_counter()
    cover = invset.CellCover(invset.parse_set("cantor3"), 8)
    hs = rotation.hit_count(rotation.OrbitSpec(parse_real("golden"), 10 ** 5), cover)
    frac, wd = hs.fraction, hs.window_density(1000)
    seconds = time.perf_counter() - t0
    base = (2 / 3) ** 8
    record(8, {
        "hit fraction": (frac <= base + 0.02, f"{frac:.5f} <= {base + 0.02:.5f}"),
        "window w=1000": (wd <= base + 0.05, f"{wd:.5f} <= {base + 0.05:.5f}"),
    }, seconds, 60)


def test_criterion_09_slice_counts():
    Ax, Ay = invset.parse_set("cantor3"), invset.parse_set("base8-01")
    checks = {}
    t0 = time.perf_counter()
    series = {v: invset.slice_cover_series(Ax, Ay, invset.SliceSpec(1, v), 30)
              for v in (Fraction(0), Fraction(1, 10), Fraction(1, 3))}
    seconds = time.perf_counter() - t0
    for v, reps in series.items():
        roots = [reps[n].count ** (1 / n) for n in range(10, 31)]
        rises = [n for n, (a, b) in enumerate(zip(roots, roots[1:]), start=11) if b > a]
        checks[f"v={v} nonincreasing"] = (not rises, f"rises at n={rises[:6]}" if rises else "n=10..30")
        checks[f"v={v} n=30"] = (roots[-1] <= 2 ** 0.2, f"{roots[-1]:.4f} <= {2 ** 0.2:.4f}")
        mism = [n for n in range(11) if reps[n].count != oracles.slice_grid_count(3, {0, 2}, 8, {0, 1}, 1, v, n)]
        checks[f"v={v} grid oracle"] = (not mism, "n<=10" if not mism else f"mismatch at {mism}")
    record(9, checks, seconds, 600)


def test_criterion_10_sparse_index():
    t0 = time.perf_counter()
    full = sparse.sparse_index(L0, 0, 35)
    Ax, Ay = invset.parse_set("cantor3"), invset.parse_set("base8-01")
    si = sparse.sparse_index(invset.slice_x_intervals(Ax, Ay, invset.SliceSpec(1, 0), 40), 0, 35)
    seconds = time.perf_counter() - t0
    whole, late, early = si.density(0, 35), si.density(20, 35), si.density(0, 15)
    record(10, {
        "l0 full": (full.hits == tuple(range(36)), f"{len(full.hits)} of 36 scales"),
        "density [0,35] < 0.5": (whole < 0.5, f"{whole:.4f}, hits {si.hits}"),
        "[20,35] < [0,15]": (late < early, f"{late:.4f} vs {early:.4f}"),
    }, seconds, 60)


def test_criterion_11_casino():
    t0 = time.perf_counter()
    cells = casino.OrbitCells("golden", 10 ** 5, 8)
    single = []
    for seed in range(100):
        (hits,) = casino.simulate_hits(casino.CoinModel(seed, (0.5,)), "evens", 10 ** 5)
        single.append(float(casino.closure_measure(cells, hits).estimate))
    model_p = (0.35, 0.35)
    rho = casino.lower_density("evens")
    multi = []
    for seed in range(100):
        model = casino.CoinModel(seed, model_p)
        _, est, _ = casino.multi_target_best(model, "evens", 10 ** 5, 8, cells=cells)
        multi.append(float(est.estimate) - (rho - model.delta - 0.05))
    seconds = time.perf_counter() - t0
    good = sum(1 for x in single if x >= 0.45)
    record(11, {
        ">=95 of 100 seeds": (good >= 95, f"{good} seeds >= 0.45, min {min(single):.4f}"),
        "multi-target": (all(m >= 0 for m in multi),
                         f"p={model_p}, bound {rho - 0.3 - 0.05:.2f}, min margin {min(multi):.4f}"),
    }, seconds, 300)


RUNS = {
    "power-digits": {"p": "3", "k": "23", "leading": "5"},
    "ap-scan": {"k-max": "60"},
    "beta-scan": {"beta": "5/2", "k-max": "12"},
    "digit-freq": {"k-max": "40", "word": "11"},
    "cf": {"value": "log2/log3", "terms": "25"},
    "ostrowski": {"value": "sqrt(2) - 1", "N": "12345"},
    "disc-bound": {"N": "10,100,1000"},
    "gap-check": {"n-max": "500"},
    "orbit": {"N": "20"},
    "star-disc": {"N": "100,1000"},
    "hit-count": {"N": "5000", "window": "100"},
    "make-set": {"set": "4:0,3/33"},
    "cover": {"set": "cantor3", "depth": "10"},
    "slice-count": {"v": "1/10", "depth": "14"},
    "dipole": {"depth": "3"},
    "sum-decompose": {},
    "pair-push": {"k": "12"},
    "sparse-index": {"depth": "30", "kmax": "25"},
    "density": {"W": "ap-scan:3,2", "N": "300", "windows": "10,50"},
    "dim-fit": {"depth-max": "10"},
    "gauge-sum": {"source": "slice", "depth-max": "14"},
    "casino-sim": {"N": "20000", "p": "7/20,7/20", "seed": "5", "replicas": "2"},
}


def test_criterion_12_determinism():
    d = tempfile.mkdtemp(prefix="rotslice-acc-")
    t0 = time.perf_counter()
    problems = []
    for name, raw in RUNS.items():
        cfg = os.path.join(d, f"{name}.cfg")
        with open(cfg, "w", encoding="utf-8") as fh:
            fh.write(f"command = {name}\n" + "".join(f"{k} = {v}\n" for k, v in raw.items()))
        first, second, again = (os.path.join(d, f"{name}.{s}.tsv") for s in ("a", "b", "c"))
        codes = (cli.main(["run", cfg, "--output", first]),
                 cli.main(["rerun", first, "--output", second]),
                 cli.main(["rerun", second, "--output", again]))
        if any(codes):
            problems.append(f"{name} exit {codes}")
            continue
        blobs = [open(p, "rb").read() for p in (first, second, again)]
        if not (blobs[0] == blobs[1] == blobs[2]):
            problems.append(f"{name} differs")
    seconds = time.perf_counter() - t0
    missing = sorted(set(cli.COMMANDS) - set(RUNS))
    record(12, {
        "byte-identical reruns": (not problems, f"{len(RUNS) - len(problems)} of {len(RUNS)} commands"
                                  + (f"; {problems}" if problems else "")),
        "all commands covered": (not missing, f"missing {missing}" if missing else f"{len(cli.COMMANDS)} commands"),
    }, seconds, None)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    raise SystemExit(1 if failed else 0)
