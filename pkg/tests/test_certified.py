from fractions import Fraction

import mpmath
import pytest

from rotslice.certified import (
    CertifiedReal, RationalPower, exact_rational_power, fixed_point_orbit, iroot, log_ratio, parse_real,
)


def _mp_fraction(x):
    return Fraction(mpmath.nstr(x, 70, strip_zeros=False))


def test_exact_arithmetic():
    a = CertifiedReal.exact(Fraction(1, 3))
    b = CertifiedReal.exact(Fraction(1, 6))
    assert (a + b).lo == Fraction(1, 2) and (a + b).is_exact
    assert (a * b).center == Fraction(1, 18)
    assert (a - b).floor() == 0


def test_parse_real_values():
    with mpmath.workdps(80):
        refs = {
            "log2/log3": mpmath.log(2) / mpmath.log(3),
            "golden": (mpmath.sqrt(5) - 1) / 2,
            "pi": mpmath.pi,
            "sqrt(2)": mpmath.sqrt(2),
        }
        for text, ref in refs.items():
            x = parse_real(text, 200)
            r = _mp_fraction(ref)
            assert x.lo - Fraction(1, 10 ** 60) <= r <= x.hi + Fraction(1, 10 ** 60), text
            assert x.radius < Fraction(1, 2 ** 150)
    assert parse_real("0.125").is_exact and parse_real("0.125").center == Fraction(1, 8)
    assert parse_real("4/3").center == Fraction(4, 3)


def test_parse_real_rejects_garbage():
    with pytest.raises(Exception):
        parse_real("__import__('os')")


def test_refinement_is_nested():
    x = log_ratio(2, 3)
    levels = [x.refine(p) for p in (128, 256, 512, 1024, 2048)]
    for a, b in zip(levels, levels[1:]):
        assert a.lo <= b.lo and b.hi <= a.hi
        assert b.radius < a.radius


def test_tighten():
    x = parse_real("e").tighten(Fraction(1, 10 ** 40))
    assert x.radius <= Fraction(1, 10 ** 40)


def test_iroot_and_exact_power():
    assert iroot(10 ** 30, 3) == 10 ** 10
    assert iroot(10 ** 30 - 1, 3) == 10 ** 10 - 1
    assert exact_rational_power(Fraction(100), Fraction(-5, 2)) == Fraction(1, 10 ** 5)
    assert exact_rational_power(Fraction(10), Fraction(-133, 10)) is None


def test_rational_power_compare():
    r = RationalPower(Fraction(1, 10 ** 14), Fraction(10), Fraction(-133, 10))
    assert r.as_fraction() is None
    assert r.compare(Fraction(1, 10 ** 27)) < 0
    assert r.compare(Fraction(1, 10 ** 28)) > 0


def test_fixed_point_orbit_encloses():
    a = parse_real("golden", 200)
    orb = fixed_point_orbit(a, 50, 128)
    with mpmath.workdps(80):
        g = (mpmath.sqrt(5) - 1) / 2
        for k in range(50):
            lo, hi = orb.bounds(k)
            ref = _mp_fraction(mpmath.frac(k * g))
            assert lo <= ref <= hi
