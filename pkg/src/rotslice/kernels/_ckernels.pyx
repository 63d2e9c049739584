# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the loops in ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()


def ap_first(positions, int length, long long min_step=1):
    cdef cnp.ndarray[int64_t, ndim=1] pos = np.ascontiguousarray(positions, dtype=np.int64)
    cdef Py_ssize_t n = pos.shape[0]
    if n == 0:
        return None
    cdef int64_t first = pos[0]
    cdef int64_t last = pos[n - 1]
    cdef cnp.ndarray[uint8_t, ndim=1] bitmap = np.zeros(last - first + 1, dtype=np.uint8)
    cdef Py_ssize_t i, j
    cdef int t
    cdef int64_t a, d, best_d = -1, best_a = -1
    cdef bint ok
    for i in range(n):
        bitmap[pos[i] - first] = 1
    for i in range(n):
        a = pos[i]
        for j in range(i + 1, n):
            d = pos[j] - a
            if best_d >= 0 and d > best_d:
                break
            if d < min_step:
                continue
            if last < a + (length - 1) * d:
                break
            ok = True
            for t in range(2, length):
                if bitmap[a + t * d - first] == 0:
                    ok = False
                    break
            if ok:
                if best_d < 0 or d < best_d or (d == best_d and a < best_a):
                    best_d = d
                    best_a = a
                break
    if best_d < 0:
        return None
    return int(best_a), int(best_d)


def count_word(seq, word):
    cdef const uint8_t[:] s = bytes(seq)
    cdef const uint8_t[:] w = bytes(word)
    cdef Py_ssize_t n = s.shape[0], m = w.shape[0], i, j
    cdef long long count = 0
    if m == 0 or m > n:
        return 0
    for i in range(n - m + 1):
        j = 0
        while j < m and s[i + j] == w[j]:
            j += 1
        if j == m:
            count += 1
    return count


def max_window_sum(indicator, Py_ssize_t width):
    cdef cnp.ndarray[int64_t, ndim=1] ind = np.ascontiguousarray(indicator, dtype=np.int64)
    cdef Py_ssize_t n = ind.shape[0], i
    if width <= 0 or width > n:
        raise ValueError("window width must be in [1, len(indicator)]")
    cdef int64_t cur = 0, best
    for i in range(width):
        cur += ind[i]
    best = cur
    for i in range(width, n):
        cur += ind[i] - ind[i - width]
        if cur > best:
            best = cur
    return int(best)


def greedy_directions(ux, uy, double delta):
    cdef cnp.ndarray[double, ndim=1] x = np.ascontiguousarray(ux, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] y = np.ascontiguousarray(uy, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], i, k, count = 0
    cdef cnp.ndarray[int64_t, ndim=1] chosen = np.empty(n, dtype=np.int64)
    cdef double d2 = delta * delta, ex, ey
    cdef bint ok
    for i in range(n):
        ok = True
        for k in range(count):
            ex = x[chosen[k]] - x[i]
            ey = y[chosen[k]] - y[i]
            if ex * ex + ey * ey < d2:
                ok = False
                break
        if ok:
            chosen[count] = i
            count += 1
    return chosen[:count].copy()
