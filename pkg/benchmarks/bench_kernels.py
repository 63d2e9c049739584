"""Time the pure-Python and compiled kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5] [--scale 1.0]

Prints one row per kernel with the best time for each backend and the
speedup.  Results from both backends are compared before timing.
"""
import argparse
import math
import timeit

import numpy as np

from rotslice import kernels
from rotslice.bigpow import digits, positions_of_digit


def workloads(scale):
    rng = np.random.default_rng(20240601)
    n_pow = max(50, int(400 * scale))
    pos = list(positions_of_digit(digits(3 ** n_pow, 2), 1))
    # sparse random positions: few short progressions, so the search runs long
    sparse = sorted({int(x) for x in rng.choice(int(20000 * scale) + 100, size=int(300 * scale) + 10, replace=False)})
    seq = bytes(rng.integers(0, 2, size=int(2_000_000 * scale), dtype=np.uint8))
    ind = rng.integers(0, 2, size=int(1_000_000 * scale), dtype=np.int64)
    theta = rng.uniform(0, 2 * math.pi, size=int(20000 * scale))
    return {
        "ap_first (power positions)": (lambda k: k.ap_first(pos, 3, 1)),
        "ap_first (random, L=4)": (lambda k: k.ap_first(sparse, 4, 1)),
        "count_word": (lambda k: k.count_word(seq, b"\x01\x01\x00\x01")),
        "max_window_sum": (lambda k: k.max_window_sum(ind, 1000)),
        "greedy_directions": (lambda k: k.greedy_directions(np.cos(theta), np.sin(theta), 0.01)),
    }


def same(a, b):
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(np.asarray(a), np.asarray(b))
    return a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--scale", type=float, default=1.0, help="multiply input sizes")
    args = ap.parse_args(argv)
    names = kernels.available_backends()
    backends = {n: kernels.backend(n) for n in names}
    if "cython" not in backends:
        print("compiled backend not built; timing the Python backend only")
    print(f"{'kernel':<28}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in workloads(args.scale).items():
        results = {n: fn(b) for n, b in backends.items()}
        if len(results) > 1 and not same(results["python"], results["cython"]):
            raise SystemExit(f"{label}: backends disagree")
        best = {n: min(timeit.repeat(lambda b=b: fn(b), number=1, repeat=args.repeat)) for n, b in backends.items()}
        row = f"{label:<28}" + "".join(f"{best[n] * 1e3:>10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{best['python'] / best['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
