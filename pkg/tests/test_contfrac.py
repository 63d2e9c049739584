from fractions import Fraction

import mpmath
import pytest

from rotslice import contfrac
from rotslice.certified import CertifiedReal, log_ratio, parse_real
from rotslice.errors import PreconditionError

import oracles


@pytest.fixture(scope="module")
def cfs():
    return {
        "golden": contfrac.cf_expand(parse_real("golden", 512), 40),
        "sqrt2": contfrac.cf_expand(parse_real("sqrt(2) - 1", 512), 40),
        "log23": contfrac.cf_expand(log_ratio(2, 3).refine(1024), 40),
        "e": contfrac.cf_expand(parse_real("e - 2", 512), 30),
    }


def test_golden_all_ones(cfs):
    assert cfs["golden"].quotients == (1,) * 40
    assert cfs["golden"].denominators[:8] == (1, 1, 2, 3, 5, 8, 13, 21)


def test_rational_terminates():
    cf = contfrac.cf_expand(Fraction(1, 2), 10)
    assert cf.quotients == (2,) and cf.rational
    cf = contfrac.cf_expand(Fraction(13, 30), 10)
    assert cf.rational and cf.convergents[-1] == (13, 30)


def test_matches_high_precision_oracle(cfs):
    ref = oracles.cf_mp(lambda: mpmath.log(2) / mpmath.log(3), 41)
    assert list(cfs["log23"].quotients) == ref[1:41]
    ref_e = oracles.cf_mp(lambda: mpmath.e - 2, 31)
    assert list(cfs["e"].quotients) == ref_e[1:31]


def test_convergent_law_and_alternation(cfs):
    for cf in cfs.values():
        conv = cf.convergents
        for n in range(len(cf) - 1):
            assert cf.convergent_error_ok(n)
        for n in range(1, len(cf)):
            p, q = conv[n]
            # with the p_0/q_0 = 0 seed, even convergents lie below alpha, odd ones above
            if n % 2 == 0:
                assert Fraction(p, q) < cf.alpha.lo
            else:
                assert Fraction(p, q) > cf.alpha.hi


def test_wide_interval_stops_early():
    x = CertifiedReal(Fraction(3, 10), Fraction(1, 10 ** 6))
    cf = contfrac.cf_expand(x, 50)
    assert 0 < len(cf) < 50 and not cf.rational


def test_zero_terms_and_bad_input():
    assert contfrac.cf_expand(log_ratio(2, 3), 0).quotients == ()
    with pytest.raises(PreconditionError):
        contfrac.cf_expand(CertifiedReal.exact(Fraction(3, 2)), 3)


def test_ostrowski_examples(cfs):
    g = cfs["golden"]
    # q_0 = q_1 = 1 and b_0 < a_1 = 1, so N = 1 is carried by q_1
    assert contfrac.ostrowski_rep(1, g).coefficients == (0, 1)
    assert contfrac.ostrowski_rep(1, cfs["sqrt2"]).coefficients == (1,)
    assert contfrac.ostrowski_rep(4, g).coefficients == (0, 1, 0, 1)
    for cf in cfs.values():
        qs = cf.denominators
        for m in range(1, 12):
            if qs[m] == qs[m - 1]:
                continue
            b = contfrac.ostrowski_rep(qs[m], cf).coefficients
            assert b[m] == 1 and sum(b) == 1


@pytest.mark.parametrize("name", ["golden", "sqrt2", "log23"])
def test_ostrowski_round_trip(cfs, name):
    cf = cfs[name]
    for N in range(1, 100001):
        rep = contfrac.ostrowski_rep(N, cf)
        if not contfrac.ostrowski_valid(rep, cf):
            pytest.fail(f"invalid representation of {N}: {rep.coefficients}")


@pytest.mark.parametrize("name", ["golden", "sqrt2", "log23", "e"])
def test_ostrowski_unique_exhaustive(cfs, name):
    cf = cfs[name]
    a, q = list(cf.quotients), list(cf.denominators)
    for N in range(1, 201):
        found = oracles.ostrowski_all(N, a, q)
        got = list(contfrac.ostrowski_rep(N, cf).coefficients)
        while got and got[-1] == 0:
            got.pop()
        assert found == [tuple(got)], N


def test_discrepancy_bound_examples(cfs):
    g = cfs["golden"]
    b = contfrac.discrepancy_bound(1, g)
    assert b.raw == 2 and b.normalized == 2
    for m in (3, 5, 8):
        qm = g.denominators[m]
        b = contfrac.discrepancy_bound(qm, g, Fraction(1, 2))
        assert b.raw == sum(g.quotients[:m]) + 1
        assert b.normalized == Fraction(1, 2) * b.raw / qm


def test_gap_lower_bound_examples():
    assert contfrac.gap_lower_bound(1).as_fraction() == Fraction(1, 10 ** 14)
    p1 = contfrac.GapBoundParams(Fraction(1, 7), Fraction(1))
    assert all(contfrac.gap_lower_bound(i, p1).as_fraction() == Fraction(1, 7) for i in (1, 5, 99))
    g10 = contfrac.gap_lower_bound(10)
    assert g10.as_fraction() is None
    with mpmath.workdps(50):
        ref = mpmath.mpf(10) ** -14 * mpmath.mpf(10) ** mpmath.mpf("-13.3")
    assert abs(float(g10) - float(ref)) <= 1e-12 * float(ref)
    assert g10.compare(Fraction(1, 10 ** 27)) < 0 < g10.compare(Fraction(1, 10 ** 28))


def test_roth_bound_examples():
    assert contfrac.roth_bound(1, Fraction(1, 3), 5).as_fraction() == 5
    assert contfrac.roth_bound(10, 0, 1).as_fraction() == Fraction(1, 100)
    assert contfrac.roth_bound(100, Fraction(1, 2), 1).as_fraction() == Fraction(1, 10 ** 5)


def test_gap_check_small_vs_brute():
    alpha = log_ratio(2, 3)
    r = contfrac.gap_check(alpha, 300)
    assert r.ok and r.violations == ()
    with mpmath.workdps(60):
        a = mpmath.log(2) / mpmath.log(3)
        pts = [mpmath.frac(i * a) for i in range(301)]
        worst = min((abs(pts[i1] - pts[i2]) / (mpmath.mpf(10) ** -14 * mpmath.mpf(i1) ** mpmath.mpf("-13.3")), i1)
                    for i1 in range(2, 301) for i2 in range(1, i1))
    assert worst[1] == r.tightest_i1
    assert abs(float(mpmath.log10(worst[0])) - r.tightest_log10_ratio) < 1e-6


def test_gap_check_detects_violation():
    # an absurdly large constant must fail immediately
    r = contfrac.gap_check(log_ratio(2, 3), 50, contfrac.GapBoundParams(Fraction(1), Fraction(1)))
    assert not r.ok and r.violations
