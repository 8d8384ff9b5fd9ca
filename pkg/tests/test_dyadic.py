from fractions import Fraction

from polyabiquad.biquadratic import biquadratic_field
from polyabiquad.dyadic import Dyadic, Interval, refine_embedding, sqrt_int_interval
from polyabiquad.quadratic import quadratic_field

SQRT2_LO = Fraction(14142135623730950488, 10**19)
SQRT2_HI = Fraction(14142135623730950489, 10**19)
GOLDEN = Fraction(16180339887498948482, 10**19)  # truncation of (1+sqrt5)/2


def _as_fr(iv):
    return iv.lo.to_fraction(), iv.hi.to_fraction()


def test_sqrt2_at_10_bits():
    k = quadratic_field(2)
    ev = refine_embedding(k.element(0, 1), 10)
    lo, hi = _as_fr(ev.values[0])
    assert Fraction(14130, 10**4) <= lo <= SQRT2_LO
    assert SQRT2_HI <= hi <= Fraction(14151, 10**4)


def test_zero_is_exact():
    k = quadratic_field(2)
    ev = refine_embedding(k.element(0, 0), 40)
    for iv in ev.values:
        assert iv.lo.is_zero() and iv.hi.is_zero()


def test_golden_ratio_at_20_bits():
    # (1+sqrt5)/2 is the positive root of x^2 - x - 1: the enclosure must
    # bracket that root exactly, and be tight to the requested precision.
    k = quadratic_field(5)
    ev = refine_embedding(k.element(1, 1, 2), 20)
    iv = ev.values[0]
    lo, hi = iv.lo.to_fraction(), iv.hi.to_fraction()
    assert lo * lo - lo - 1 <= 0 <= hi * hi - hi - 1
    assert hi - lo <= Fraction(2, 2**18)
    assert abs(lo - GOLDEN) < Fraction(1, 10**5)


def test_relative_width_bound():
    k = quadratic_field(7)
    x = k.element(3, 2)  # 3 + 2 sqrt(7)
    for p in (12, 30, 64, 120):
        ev = refine_embedding(x, p)
        for iv in ev.values:
            mag = iv.abs_lower_bound().to_fraction()
            assert iv.width().to_fraction() <= Fraction(1, 2 ** (p - 2)) * mag


def test_nested_and_halving():
    k3 = quadratic_field(3)
    K = biquadratic_field(2, 5)
    elements = [k3.element(0, 1), k3.element(5, -3),
                K.radical(1) + K.radical(3), K.basis[3]]
    for x in elements:
        prev = None
        for p in (16, 32, 64, 128):
            ev = refine_embedding(x, p)
            iv = ev.values[0]
            if prev is not None:
                assert prev.lo <= iv.lo and iv.hi <= prev.hi, "not nested"
                w_new, w_old = iv.width().to_fraction(), prev.width().to_fraction()
                assert w_new * 2 <= w_old or w_old == 0
            prev = iv


def test_complex_place_of_imaginary_field():
    k = quadratic_field(-5)
    ev = refine_embedding(k.element(1, 2), 30)  # 1 + 2 sqrt(-5)
    box = ev.values[0]
    assert box.re.contains(Fraction(1))
    # 2*sqrt(5) = 4.4721359...
    assert box.im.lo.to_fraction() < Fraction(44722, 10**4)
    assert box.im.hi.to_fraction() > Fraction(44721, 10**4)


def test_interval_sqrt_enclosure():
    for n in (2, 3, 5, 7, 10, 1234):
        iv = sqrt_int_interval(n, 80)
        lo, hi = _as_fr(iv)
        assert lo * lo <= n <= hi * hi
        assert hi - lo <= Fraction(1, 2**70)


def test_dyadic_rounding_directions():
    x = Dyadic.of(12345678901234567, -20)
    assert x.round_down(16) <= x <= x.round_up(16)
    assert x.round_down(16).man.bit_length() <= 16


def test_interval_division_and_grid():
    a = Interval.of_fraction(Fraction(7, 3), 60)
    b = Interval.of_fraction(Fraction(2, 5), 60)
    q = a.div(b, 60)
    assert q.contains(Fraction(35, 6))
    pts = Interval.of_fraction(Fraction(1, 3), 60).grid_points(4)
    assert pts == []  # no quarter-integer in a point interval at 1/3
    pts = Interval(Dyadic.of(1, -3), Dyadic.of(5, -3)).grid_points(4)  # [1/8, 5/8]
    assert pts == [Fraction(1, 4), Fraction(1, 2)]
