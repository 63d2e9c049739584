"""Pure-Python implementations of the hot loops.

Every function here has a twin with the same signature and semantics in
``_ckernels.pyx``; the package uses whichever imports.
"""
from __future__ import annotations

import numpy as np


def ap_first(positions, length, min_step=1):
    """Smallest ``(step, start)`` of a ``length``-term progression inside ``positions``.

    ``positions`` must be sorted and duplicate-free.  Returns ``(start, step)``
    or ``None``.
    """
    pos = [int(x) for x in positions]
    members = set(pos)
    n = len(pos)
    best_d = None
    best_a = None
    span = (length - 1)
    for i in range(n):
        a = pos[i]
        for j in range(i + 1, n):
            d = pos[j] - a
            if best_d is not None and d > best_d:
                break
            if d < min_step:
                continue
            if pos[-1] < a + span * d:
                break
            ok = True
            for t in range(2, length):
                if a + t * d not in members:
                    ok = False
                    break
            if ok:
                if best_d is None or d < best_d or (d == best_d and a < best_a):
                    best_d, best_a = d, a
                break
    if best_d is None:
        return None
    return best_a, best_d


def count_word(seq, word):
    """Number of overlapping occurrences of ``word`` in ``seq`` (both bytes-like)."""
    seq, word = bytes(seq), bytes(word)
    if not word or len(word) > len(seq):
        return 0
    count = 0
    start = seq.find(word)
    while start != -1:
        count += 1
        start = seq.find(word, start + 1)
    return count


def max_window_sum(indicator, width):
    """Maximum of ``sum(indicator[a:a+width])`` over all full windows."""
    ind = np.asarray(indicator, dtype=np.int64)
    if width <= 0 or width > ind.size:
        raise ValueError("window width must be in [1, len(indicator)]")
    csum = np.concatenate(([0], np.cumsum(ind)))
    return int((csum[width:] - csum[:-width]).max())


def greedy_directions(ux, uy, delta):
    """Indices of a greedy maximal ``delta``-separated subset of unit vectors."""
    ux = np.asarray(ux, dtype=np.float64)
    uy = np.asarray(uy, dtype=np.float64)
    d2 = float(delta) * float(delta)
    acc_x: list[float] = []
    acc_y: list[float] = []
    chosen: list[int] = []
    for i in range(ux.size):
        x, y = ux[i], uy[i]
        ok = True
        for k in range(len(acc_x)):
            ex = acc_x[k] - x
            ey = acc_y[k] - y
            if ex * ex + ey * ey < d2:
                ok = False
                break
        if ok:
            acc_x.append(x)
            acc_y.append(y)
            chosen.append(i)
    return np.asarray(chosen, dtype=np.int64)
