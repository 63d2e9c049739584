import math
import random
from fractions import Fraction

import numpy as np
import pytest

from rotslice import invset
from rotslice.errors import DegenerateInputError, PreconditionError

import oracles


def test_make_digit_set_dimensions():
    assert invset.make_digit_set(3, {0, 2}).dimension == pytest.approx(math.log(2) / math.log(3), abs=1e-15)
    assert invset.make_digit_set(2, {0, 1}).dimension == 1.0
    assert invset.make_digit_set(8, {0, 1}).dimension == pytest.approx(1 / 3, abs=1e-15)
    gm = invset.parse_set("golden-mean")
    assert gm.dimension == pytest.approx(math.log2((1 + math.sqrt(5)) / 2), abs=1e-12)


def test_make_digit_set_rejects():
    with pytest.raises(PreconditionError):
        invset.make_digit_set(3, {3})
    with pytest.raises(DegenerateInputError):
        invset.make_digit_set(2, {0, 1}, ["0", "1"])
    with pytest.raises(PreconditionError):
        invset.parse_set("nonsense")


def test_parse_generic():
    A = invset.parse_set("5:0,2,4/44;202")
    assert A.base == 5 and A.allowed_digits == {0, 2, 4} and A.forbidden_words == ((2, 0, 2), (4, 4))


def test_cover_examples():
    assert invset.cover_at_depth(invset.parse_set("cantor3"), 2).count == 4
    assert invset.cover_at_depth(invset.parse_set("full2"), 10).count == 1024
    assert invset.cover_at_depth(invset.make_digit_set(2, {0, 1}, ["11"]), 5).count == 13


@pytest.mark.parametrize("text", ["cantor3", "golden-mean", "5:0,2,4/44;202", "3:0,1,2/12;21", "4:0,1,3/33"])
def test_cover_counts_vs_enumeration_and_matrix(text):
    A = invset.parse_set(text)
    m = A.automaton.matrix().astype(object)
    start = np.zeros(m.shape[0], dtype=object)
    start[A.automaton.start] = 1
    v = start
    for n in range(0, 8):
        assert invset.cover_count(A, n) == len(list(oracles.admissible_words(A.base, A.allowed_digits, A.forbidden_words, n)))
        if n:
            assert invset.cover_count(A, n) <= A.base * invset.cover_count(A, n - 1)
        cells = invset.cover_at_depth(A, n).cells
        assert list(cells) == sorted(oracles.admissible_words(A.base, A.allowed_digits, A.forbidden_words, n))
        v = v.dot(m) if n else v
        assert sum(v) == invset.cover_count(A, n)


def test_aligned_depth_rule():
    for n in range(0, 60):
        d = invset.aligned_depth(3, n)
        assert 3 ** d >= 2 ** n and (d == 0 or 3 ** (d - 1) < 2 ** n)
        assert 2 ** -n >= 3 ** -d >= 2 ** -n / 3


def test_slice_examples():
    c, e = invset.parse_set("cantor3"), invset.parse_set("base8-01")
    assert invset.slice_cover_count(c, e, invset.SliceSpec(1, Fraction(5, 2)), 8).count == 0
    full = invset.parse_set("full2")
    for n in range(0, 11):
        got = invset.slice_cover_count(full, full, invset.SliceSpec(1, 0), n).count
        assert got == 3 * 2 ** n - 2
        assert 2 ** n <= got <= 4 * 2 ** n
    r = invset.slice_cover_count(c, e, invset.SliceSpec(1, 0), 20)
    assert r.count ** (1 / 20) <= 2 ** 0.15


CASES = [
    ("cantor3", "base8-01", 1, 0),
    ("cantor3", "base8-01", 1, Fraction(1, 10)),
    ("cantor3", "base8-01", 1, Fraction(1, 3)),
    ("full2", "cantor3", Fraction(-2, 3), Fraction(5, 6)),
    ("golden-mean", "cantor3", Fraction(3, 2), Fraction(-1, 7)),
    ("base4-01", "5:0,2,4/44", Fraction(1, 3), Fraction(1, 5)),
]


@pytest.mark.parametrize("ax,ay,u,v", CASES)
def test_slice_matches_full_grid(ax, ay, u, v):
    Ax, Ay = invset.parse_set(ax), invset.parse_set(ay)
    reps = invset.slice_cover_series(Ax, Ay, invset.SliceSpec(u, v), 10)
    for j, rep in enumerate(reps):
        ref = oracles.slice_grid_count(Ax.base, Ax.allowed_digits, Ay.base, Ay.allowed_digits, u, v, j,
                                       Ax.forbidden_words, Ay.forbidden_words)
        assert rep.count == ref, (j, rep.count, ref)


def test_slice_monotone_in_digits():
    small = invset.parse_set("cantor3")
    big = invset.parse_set("3:0,1,2/11")
    y = invset.parse_set("base4-01")
    for v in (0, Fraction(1, 5)):
        s = invset.slice_cover_series(small, y, invset.SliceSpec(1, v), 14)
        b = invset.slice_cover_series(big, y, invset.SliceSpec(1, v), 14)
        assert all(x.count <= z.count for x, z in zip(s, b))


def test_slice_x_intervals_cover_points():
    Ax, Ay = invset.parse_set("cantor3"), invset.parse_set("base8-01")
    ivs = invset.slice_x_intervals(Ax, Ay, invset.SliceSpec(1, 0), 16)
    assert any(lo <= 0 <= hi for lo, hi in ivs)           # (0, 0) lies on the slice
    for lo, hi in ivs:
        assert 0 <= lo <= hi <= 1 and hi - lo <= Fraction(1, 2 ** 16)


def test_dipole_examples():
    one = invset.dipole_directions(np.array([[0.3, 0.3]]), 0.1)
    assert one.count == 0
    full = invset.parse_set("full2")
    ds = invset.dipole_directions(invset.product_cell_centers(full, full, 4), 0.1)
    assert ds.count >= 30 and ds.bound_holds()
    u = ds.directions
    assert np.allclose(np.hypot(u[:, 0], u[:, 1]), 1)
    d = np.hypot(u[:, None, 0] - u[None, :, 0], u[:, None, 1] - u[None, :, 1])
    assert (d[~np.eye(len(u), dtype=bool)] >= 0.1).all()


@pytest.mark.parametrize("ax,ay,t", [("cantor3", "base8-01", 1), ("cantor3", "cantor3", 9), ("golden-mean", "full2", 4)])
def test_dipole_bound_assertion(ax, ay, t):
    pts = invset.product_cell_centers(invset.parse_set(ax), invset.parse_set(ay), 3, t)
    ds = invset.dipole_directions(pts, 0.1)
    assert ds.bound_holds()
    for (i, j), u in zip(ds.witnesses, ds.directions):
        dist = np.hypot(*(pts[j] - pts[i]))
        assert 1 / 6 <= dist <= 1.5
        assert np.allclose((pts[j] - pts[i]) / dist, u)


def test_sum_decompose_examples():
    d = invset.sum_decompose(invset.parse_set("full2"), 0.5, 0.1)
    assert d.dim_I == pytest.approx(0.5) and d.dim_II == pytest.approx(0.5)
    d4 = invset.sum_decompose(invset.parse_set("base4-01"), 0.25, 0.05)
    assert Fraction(d4.n_low, d4.N) == Fraction(1, 2)
    assert abs(d4.dim_I - 0.25) <= 0.05


@pytest.mark.parametrize("text,s,eps", [("full2", 0.5, 0.1), ("base4-01", 0.25, 0.05), ("golden-mean", 0.3, 0.05),
                                        ("full2", 0.3, 0.02)])
def test_sum_decompose_containment(text, s, eps):
    A = invset.parse_set(text)
    d = invset.sum_decompose(A, s, eps)
    assert d.count_I * d.count_II == len(d.D) ** d.N
    assert d.dim_I + d.dim_II == pytest.approx(d.dim_tilde, abs=1e-15)
    assert abs(d.dim_I - s) <= eps
    bits_per_digit = A.base.bit_length() - 1
    rng = random.Random(5)
    big = d.N * d.M
    for _ in range(40):
        word = invset.sample_element_digits(A, 3 * big // bits_per_digit, rng)
        bits = "".join(format(w, f"0{bits_per_digit}b") for w in word)
        for i in range(0, len(bits), big):
            a = int(bits[i:i + big], 2)
            lo, hi = d.split_digit(a)
            assert lo + hi == a and d.in_D_I(lo) and d.in_D_II(hi)


def test_push_powers_oracle():
    for k in range(0, 31):
        r = invset.push_powers(k)
        x, y = r.final
        assert x == 1
        j = 0
        while 4 ** (j + 1) <= 3 ** k:
            j += 1
        # log y_k = log 4 {k log3/log4} means y_k = 3^k / 4^floor(k log3/log4)
        assert y == Fraction(3 ** k, 4 ** j)
    assert invset.push_powers(0).final == (1, 1)


def test_push_beta():
    for beta, M in ((Fraction(3), 2), (Fraction(5, 2), 2), (Fraction(7), 3)):
        for k in range(0, 25):
            r = invset.push_beta(beta, k)
            x, y = r.final
            assert x == 1
            # y/x starts at 1 and stays in (2**-M, 1]
            assert y == Fraction(2 ** (M * r.y_divisions)) / beta ** k
            assert Fraction(1, 2 ** M) < y <= 1
    with pytest.raises(DegenerateInputError):
        invset.push_beta(Fraction(4), 3)


def test_floor_n_log2_log3():
    for n in range(200):
        m = invset.floor_n_log2_log3(n)
        assert 3 ** m <= 2 ** n < 3 ** (m + 1)


def test_pair_push_identity_and_window():
    x, y = (Fraction(0), Fraction(0)), (Fraction(1, 4096), Fraction(1, 2048))
    r0 = invset.pair_push(x, y, 0)
    assert r0.x == x and r0.y == y
    r = invset.pair_push(x, y, 10)
    assert r.trace_consistent()
    assert r.window_checked and r.window_ok
    dist2 = (r.y[0] - r.x[0]) ** 2 + (r.y[1] - r.x[1]) ** 2
    assert Fraction(1, 36) <= dist2 <= Fraction(9, 4)


def test_pair_push_trace_long():
    r = invset.pair_push((Fraction(1, 3), Fraction(1, 5)), (Fraction(1, 3) + Fraction(1, 10 ** 6), Fraction(2, 7)), 60)
    assert r.trace_consistent()
    # wraps follow the exact floor rule
    assert list(r.wraps) == [invset.floor_n_log2_log3(n) > invset.floor_n_log2_log3(n - 1) for n in range(1, 61)]
