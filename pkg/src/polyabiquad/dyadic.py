"""Interval arithmetic over exact dyadic rationals with directed rounding.

Every endpoint is m * 2**e with m, e plain integers, so rounding is explicit:
operations that cannot be exact (square roots, divisions, endpoint rounding)
round the lower endpoint down and the upper endpoint up.  An Interval or
ComplexBox therefore always encloses the true value; the numeric layer only
ever produces *hints* that are verified by exact rational arithmetic upstream.

Intervals never make decisions on their own: a sign query answers "provably
positive / provably negative / unknown at this precision" and callers refine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def _normalized(man: int, exp: int) -> tuple[int, int]:
    if man == 0:
        return 0, 0
    tz = (man & -man).bit_length() - 1
    return man >> tz, exp + tz


@dataclass(frozen=True, slots=True)
class Dyadic:
    """Exact dyadic rational man * 2**exp, mantissa odd or zero."""

    man: int
    exp: int

    @staticmethod
    def of(man: int, exp: int = 0) -> "Dyadic":
        m, e = _normalized(man, exp)
        return Dyadic(m, e)

    def to_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.man << self.exp)
        return Fraction(self.man, 1 << -self.exp)

    def is_zero(self) -> bool:
        return self.man == 0

    def sign(self) -> int:
        return (self.man > 0) - (self.man < 0)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.man, self.exp)

    def __add__(self, other: "Dyadic") -> "Dyadic":
        e = min(self.exp, other.exp)
        return Dyadic.of((self.man << (self.exp - e)) + (other.man << (other.exp - e)), e)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        return self + (-other)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic.of(self.man * other.man, self.exp + other.exp)

    def _cmp(self, other: "Dyadic") -> int:
        d = self - other
        return d.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def round_down(self, bits: int) -> "Dyadic":
        """Largest dyadic <= self with at most `bits` mantissa bits."""
        drop = abs(self.man).bit_length() - bits
        if drop <= 0:
            return self
        return Dyadic.of(self.man >> drop, self.exp + drop)  # >> floors

    def round_up(self, bits: int) -> "Dyadic":
        drop = abs(self.man).bit_length() - bits
        if drop <= 0:
            return self
        return Dyadic.of(-((-self.man) >> drop), self.exp + drop)

    def floor_int(self) -> int:
        if self.exp >= 0:
            return self.man << self.exp
        return self.man >> -self.exp

    def ceil_int(self) -> int:
        return -((-self).floor_int())

    def __str__(self):
        return str(float(self.man) * 2.0**self.exp)


ZERO = Dyadic(0, 0)
ONE = Dyadic(1, 0)


def from_fraction_down(fr: Fraction, bits: int) -> Dyadic:
    p, q = fr.numerator, fr.denominator
    if q == 1:
        return Dyadic.of(p)
    shift = bits + q.bit_length() + 2
    return Dyadic.of((p << shift) // q, -shift)  # // floors


def from_fraction_up(fr: Fraction, bits: int) -> Dyadic:
    return -from_fraction_down(-fr, bits)


def _div_down(x: Dyadic, y: Dyadic, bits: int) -> Dyadic:
    assert y.man != 0
    shift = bits + abs(y.man).bit_length() + 2
    return Dyadic.of((x.man << shift) // y.man, x.exp - y.exp - shift)


def _div_up(x: Dyadic, y: Dyadic, bits: int) -> Dyadic:
    return -_div_down(-x, y, bits)


def _sqrt_down(x: Dyadic, bits: int) -> Dyadic:
    assert x.man >= 0
    if x.man == 0:
        return ZERO
    m, e = x.man, x.exp
    if e % 2:
        m <<= 1
        e -= 1
    extra = max(0, 2 * (bits + 2 - m.bit_length() // 2))
    if extra % 2:
        extra += 1
    return Dyadic.of(isqrt(m << extra), e // 2 - extra // 2)


def _sqrt_up(x: Dyadic, bits: int) -> Dyadic:
    assert x.man >= 0
    if x.man == 0:
        return ZERO
    m, e = x.man, x.exp
    if e % 2:
        m <<= 1
        e -= 1
    extra = max(0, 2 * (bits + 2 - m.bit_length() // 2))
    if extra % 2:
        extra += 1
    s = isqrt(m << extra)
    if s * s < (m << extra):
        s += 1
    return Dyadic.of(s, e // 2 - extra // 2)


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval [lo, hi] with exact dyadic endpoints, lo <= hi."""

    lo: Dyadic
    hi: Dyadic

    def __post_init__(self):
        assert self.lo <= self.hi, "empty interval"

    @staticmethod
    def point(v: int) -> "Interval":
        d = Dyadic.of(v)
        return Interval(d, d)

    @staticmethod
    def of_fraction(fr: Fraction, bits: int) -> "Interval":
        if fr.denominator == 1:
            return Interval.point(fr.numerator)
        return Interval(from_fraction_down(fr, bits), from_fraction_up(fr, bits))

    def add(self, other: "Interval", bits: int) -> "Interval":
        return Interval((self.lo + other.lo).round_down(bits),
                        (self.hi + other.hi).round_up(bits))

    def sub(self, other: "Interval", bits: int) -> "Interval":
        return self.add(other.neg(), bits)

    def neg(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def mul(self, other: "Interval", bits: int) -> "Interval":
        prods = [self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi]
        return Interval(min(prods).round_down(bits), max(prods).round_up(bits))

    def scale_fraction(self, fr: Fraction, bits: int) -> "Interval":
        return self.mul(Interval.of_fraction(fr, bits), bits)

    def div(self, other: "Interval", bits: int) -> "Interval":
        """self / other; other must be provably nonzero."""
        assert other.lo.sign() > 0 or other.hi.sign() < 0
        quots_dn = [_div_down(a, b, bits) for a in (self.lo, self.hi)
                    for b in (other.lo, other.hi)]
        quots_up = [_div_up(a, b, bits) for a in (self.lo, self.hi)
                    for b in (other.lo, other.hi)]
        return Interval(min(quots_dn), max(quots_up))

    def sqrt(self, bits: int) -> "Interval":
        """Enclosure of the square root; the caller must know the true value
        is >= 0 (a rounding-induced negative lower endpoint is clamped)."""
        lo = self.lo if self.lo.sign() >= 0 else ZERO
        assert self.hi.sign() >= 0
        return Interval(_sqrt_down(lo, bits), _sqrt_up(self.hi, bits))

    def square(self, bits: int) -> "Interval":
        if self.lo.sign() >= 0:
            return Interval((self.lo * self.lo).round_down(bits),
                            (self.hi * self.hi).round_up(bits))
        if self.hi.sign() <= 0:
            return Interval((self.hi * self.hi).round_down(bits),
                            (self.lo * self.lo).round_up(bits))
        m = max(self.lo * self.lo, self.hi * self.hi)
        return Interval(ZERO, m.round_up(bits))

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def width(self) -> Dyadic:
        return self.hi - self.lo

    def contains(self, fr: Fraction) -> bool:
        return self.lo.to_fraction() <= fr <= self.hi.to_fraction()

    def is_positive(self) -> bool:
        return self.lo.sign() > 0

    def is_negative(self) -> bool:
        return self.hi.sign() < 0

    def contains_zero(self) -> bool:
        return self.lo.sign() <= 0 <= self.hi.sign()

    def grid_points(self, denominator: int) -> list[Fraction]:
        """All rationals k/denominator inside the interval."""
        lo = (self.lo * Dyadic.of(denominator)).ceil_int()
        hi = (self.hi * Dyadic.of(denominator)).floor_int()
        return [Fraction(k, denominator) for k in range(lo, hi + 1)]

    def abs_lower_bound(self) -> Dyadic:
        """A nonnegative lower bound for |x| over the interval."""
        if self.contains_zero():
            return ZERO
        return self.lo if self.lo.sign() > 0 else -self.hi


def sqrt_int_interval(n: int, bits: int) -> Interval:
    """Enclosure of sqrt(n) for a nonnegative integer n."""
    assert n >= 0
    d = Dyadic.of(n)
    return Interval(_sqrt_down(d, bits), _sqrt_up(d, bits))


@dataclass(frozen=True, slots=True)
class ComplexBox:
    """Axis-aligned rectangle re + i*im enclosing a complex value."""

    re: Interval
    im: Interval

    def add(self, other: "ComplexBox", bits: int) -> "ComplexBox":
        return ComplexBox(self.re.add(other.re, bits), self.im.add(other.im, bits))

    def neg(self) -> "ComplexBox":
        return ComplexBox(self.re.neg(), self.im.neg())

    def conj(self) -> "ComplexBox":
        return ComplexBox(self.re, self.im.neg())

    def mul(self, other: "ComplexBox", bits: int) -> "ComplexBox":
        re = self.re.mul(other.re, bits).sub(self.im.mul(other.im, bits), bits)
        im = self.re.mul(other.im, bits).add(self.im.mul(other.re, bits), bits)
        return ComplexBox(re, im)

    def abs_squared(self, bits: int) -> Interval:
        return self.re.square(bits).add(self.im.square(bits), bits)

    def sqrt(self, bits: int, im_sign: int) -> "ComplexBox":
        """Square root branch with Im of the true root having sign im_sign.

        im_sign must be the exact sign (+1/-1) of the imaginary part of the
        *input*; purely real inputs are the caller's special case.  Uses
        re(w) = sqrt((|z|+re)/2), im(w) = im_sign * sqrt((|z|-re)/2),
        which is the root with re(w) >= 0.
        """
        assert im_sign in (1, -1)
        mag = self.abs_squared(bits).sqrt(bits)
        half = Dyadic.of(1, -1)
        p2 = mag.add(self.re, bits).mul(Interval(half, half), bits)
        q2 = mag.sub(self.re, bits).mul(Interval(half, half), bits)
        p = p2.sqrt(bits)
        q = q2.sqrt(bits)
        if im_sign < 0:
            q = q.neg()
        return ComplexBox(p, q)

    def intersect(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re.intersect(other.re), self.im.intersect(other.im))

    def max_width(self) -> Dyadic:
        return max(self.re.width(), self.im.width())


@dataclass(frozen=True)
class EmbeddingVector:
    """Interval enclosures of an algebraic element, one entry per
    archimedean place (Interval for real places, ComplexBox for complex
    ones), all provably containing the true embedding values."""

    precision_bits: int
    values: tuple


def _levels_for(precision_bits: int) -> list[int]:
    level, out = 16, []
    while level < precision_bits + 4:
        out.append(level)
        level *= 2
    out.append(level)
    return out


def refine_embedding(x, precision_bits: int) -> EmbeddingVector:
    """Enclose every archimedean embedding of x at the requested precision.

    x is any object exposing _place_enclosures(bits) -> list[Interval |
    ComplexBox] (QuadElement and BiquadElement do).  Enclosures computed at
    increasing working precisions are intersected, which makes repeated
    calls with growing precision return nested intervals.  The relative
    width of each returned enclosure is at most 2**(-precision_bits + 2);
    the zero element yields exact [0, 0] entries.
    """
    assert precision_bits > 0
    values = None
    target = Fraction(1, 1 << max(0, precision_bits - 2))
    bits = None
    for bits in _levels_for(precision_bits):
        fresh = x._place_enclosures(bits)
        values = fresh if values is None else [
            a.intersect(b) for a, b in zip(values, fresh)
        ]
    while not _widths_ok(values, target):
        bits *= 2
        fresh = x._place_enclosures(bits)
        values = [a.intersect(b) for a, b in zip(values, fresh)]
        assert bits < 1 << 20, "embedding refinement failed to converge"
    return EmbeddingVector(precision_bits, tuple(values))


def _widths_ok(values, target: Fraction) -> bool:
    for v in values:
        if isinstance(v, Interval):
            if v.lo.is_zero() and v.hi.is_zero():
                continue
            if v.contains_zero():
                return False
            mag = v.abs_lower_bound().to_fraction()
            if v.width().to_fraction() > target * mag:
                return False
        else:
            if (v.re.lo.is_zero() and v.re.hi.is_zero()
                    and v.im.lo.is_zero() and v.im.hi.is_zero()):
                continue
            mag2 = v.abs_squared(64)
            if mag2.lo.sign() <= 0:
                return False
            w = v.max_width().to_fraction()
            if w * w > target * target * mag2.lo.to_fraction():
                return False
    return True
