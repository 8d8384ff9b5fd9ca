"""Quadratic fields Q(sqrt(d)): exact elements, fundamental units by
continued fractions, ideal lattices in 2x2 Hermite form, principality
testing, and the order of the group of strongly ambiguous ideal classes
both by the closed formula 2**(s-1-nu) and by direct enumeration.

Principality of an integral ideal is decided through the classical
correspondence with binary quadratic forms of discriminant Delta:
the ideal [A, B + C*omega] is principal exactly when its norm form
represents +1 or -1.  For imaginary fields the form is positive definite
and the search region is finite; for real fields we walk the cycle of
reduced indefinite forms, where a unit value is represented primitively
iff it occurs as a leading coefficient of the cycle (any |m| < sqrt(Delta)/2
does).  Both routes return an exact generator and both "nonprincipal"
verdicts are complete, never heuristic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .dyadic import ComplexBox, Interval, sqrt_int_interval
from .errors import (Budget, BudgetExceededError, DomainError,
                     InconsistencyError, InvalidInputError)
from .intmath import prime_divisors, squarefree_decompose


@dataclass(frozen=True)
class QuadElement:
    """(x + y*sqrt(d)) / den with den in {1, 2}; always an algebraic integer."""

    d: int
    x: int
    y: int
    den: int = 1

    @staticmethod
    def make(d: int, x: int, y: int, den: int = 1) -> "QuadElement":
        if den < 0:
            x, y, den = -x, -y, -den
        assert den > 0
        g = gcd(gcd(x, y), den)
        if g > 1:
            x, y, den = x // g, y // g, den // g
        if den == 1:
            return QuadElement(d, x, y, 1)
        if den == 2 and d % 4 == 1 and (x - y) % 2 == 0:
            return QuadElement(d, x, y, 2)
        raise InvalidInputError(f"({x}+{y}*sqrt({d}))/{den} is not integral")

    def coeffs(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.x, self.den), Fraction(self.y, self.den)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_rational(self) -> bool:
        return self.y == 0

    def __add__(self, other: "QuadElement") -> "QuadElement":
        assert self.d == other.d
        return QuadElement.make(
            self.d,
            self.x * other.den + other.x * self.den,
            self.y * other.den + other.y * self.den,
            self.den * other.den,
        )

    def __neg__(self) -> "QuadElement":
        return QuadElement(self.d, -self.x, -self.y, self.den)

    def __sub__(self, other: "QuadElement") -> "QuadElement":
        return self + (-other)

    def __mul__(self, other: "QuadElement") -> "QuadElement":
        assert self.d == other.d
        return QuadElement.make(
            self.d,
            self.x * other.x + self.y * other.y * self.d,
            self.x * other.y + self.y * other.x,
            self.den * other.den,
        )

    def scale(self, n: int) -> "QuadElement":
        return QuadElement.make(self.d, self.x * n, self.y * n, self.den)

    def conj(self) -> "QuadElement":
        return QuadElement(self.d, self.x, -self.y, self.den)

    def norm(self) -> int:
        num = self.x * self.x - self.d * self.y * self.y
        assert num % (self.den * self.den) == 0
        return num // (self.den * self.den)

    def trace(self) -> int:
        assert (2 * self.x) % self.den == 0
        return 2 * self.x // self.den

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def __pow__(self, n: int) -> "QuadElement":
        assert n >= 0
        result = QuadElement(self.d, 1, 0, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _place_enclosures(self, bits: int):
        cx, cy = self.coeffs()
        if self.d > 0:
            rt = sqrt_int_interval(self.d, bits)
            base = Interval.of_fraction(cx, bits)
            off = rt.scale_fraction(cy, bits)
            return [base.add(off, bits), base.sub(off, bits)]
        rt = sqrt_int_interval(-self.d, bits)
        return [ComplexBox(Interval.of_fraction(cx, bits), rt.scale_fraction(cy, bits))]

    def __str__(self):
        core = f"{self.x}"
        if self.y:
            sign = "+" if self.y > 0 else "-"
            mag = abs(self.y)
            term = f"sqrt({self.d})" if mag == 1 else f"{mag}*sqrt({self.d})"
            core = f"{self.x}{sign}{term}" if self.x else (f"-{term}" if self.y < 0 else term)
        return f"({core})/2" if self.den == 2 else core


class QuadraticField:
    """Q(sqrt(d)) for squarefree d not in {0, 1}."""

    def __init__(self, d: int):
        sf = squarefree_decompose(d)
        if sf.squarefree_part in (0, 1):
            raise InvalidInputError(f"d={d} gives a degenerate quadratic field")
        self.d = sf.squarefree_part
        self.delta = self.d if self.d % 4 == 1 else 4 * self.d
        self.is_real = self.d > 0
        self.ramified_primes = prime_divisors(self.delta)
        self.s = len(self.ramified_primes)
        self._fu: QuadElement | None = None

    def element(self, x: int, y: int, den: int = 1) -> QuadElement:
        return QuadElement.make(self.d, x, y, den)

    def one(self) -> QuadElement:
        return QuadElement(self.d, 1, 0, 1)

    def omega(self) -> QuadElement:
        """Standard quadratic integer generator: sqrt(d) or (1+sqrt(d))/2."""
        if self.d % 4 == 1:
            return QuadElement(self.d, 1, 1, 2)
        return QuadElement(self.d, 0, 1, 1)

    def from_omega_coords(self, c0: int, c1: int) -> QuadElement:
        if self.d % 4 == 1:
            return QuadElement.make(self.d, 2 * c0 + c1, c1, 2)
        return QuadElement.make(self.d, c0, c1, 1)

    def omega_coords(self, el: QuadElement) -> tuple[int, int]:
        if self.d % 4 == 1:
            if el.den == 2:
                assert (el.x - el.y) % 2 == 0
                return (el.x - el.y) // 2, el.y
            return el.x - el.y, 2 * el.y
        assert el.den == 1
        return el.x, el.y

    @property
    def fundamental_unit(self) -> QuadElement:
        """The unit > 1 generating the units modulo +-1 (real fields only)."""
        if not self.is_real:
            raise DomainError("imaginary quadratic fields have no fundamental unit")
        if self._fu is None:
            self._fu = _cf_fundamental_unit(self)
        return self._fu

    @property
    def lam(self) -> int:
        """Norm of the fundamental unit for real fields, else 0."""
        return self.fundamental_unit.norm() if self.is_real else 0

    @property
    def nu(self) -> int:
        return 1 if self.is_real and self.lam == 1 else 0

    def torsion_generator(self) -> QuadElement:
        """Generator of the roots of unity: i, zeta_6, or -1."""
        if self.d == -1:
            return QuadElement(self.d, 0, 1, 1)
        if self.d == -3:
            return QuadElement(self.d, 1, 1, 2)
        return QuadElement(self.d, -1, 0, 1)

    def torsion_order(self) -> int:
        return {-1: 4, -3: 6}.get(self.d, 2)

    def __repr__(self):
        return f"QuadraticField({self.d})"

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.d == self.d

    def __hash__(self):
        return hash(("quad", self.d))


def quadratic_field(d_raw: int) -> QuadraticField:
    if d_raw == 0:
        raise InvalidInputError("d must be nonzero")
    return QuadraticField(d_raw)


def _floor_surd(P: int, Q: int, s: int) -> int:
    """floor((P + sqrt(D)) / Q) for nonsquare D with s = isqrt(D)."""
    if Q > 0:
        return (P + s) // Q
    return -((P + s) // (-Q)) - 1


def _cf_fundamental_unit(k: QuadraticField) -> QuadElement:
    """Fundamental unit via the continued fraction of (D mod 2 + sqrt(D))/2,
    D = Delta.  When the surd state (P, Q) first repeats, the product M of
    the digit matrices over the periodic block fixes the surd x, and
    M10*x + M11 is the smallest unit > 1 of the order of discriminant D.
    """
    D = k.delta
    s = isqrt(D)
    assert s * s != D
    P, Q = D & 1, 2
    seen: dict[tuple[int, int], int] = {}
    digits: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(digits)
        a = _floor_surd(P, Q, s)
        digits.append(a)
        P = a * Q - P
        assert (D - P * P) % Q == 0
        Q = (D - P * P) // Q
        assert Q != 0
        assert len(digits) < 100_000
    m00, m01, m10, m11 = 1, 0, 0, 1
    for a in digits[seen[(P, Q)]:]:
        m00, m01, m10, m11 = m00 * a + m01, m00, m10 * a + m11, m10
    # unit = m10 * (P + sqrt(D))/Q + m11, with sqrt(D) = t*sqrt(d)
    t = 2 if D == 4 * k.d else 1
    num_x, num_y = m10 * P + m11 * Q, m10 * t
    g = gcd(gcd(num_x, num_y), Q)
    eps = QuadElement.make(k.d, num_x // g, num_y // g, Q // g)
    assert eps.is_unit() and eps.x > 0 and eps.y > 0
    return eps


# ---------------------------------------------------------------------------
# Ideals as 2x2 Hermite-form lattices over the basis (1, omega)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadIdeal:
    """Integral ideal with Z-basis (A, B + C*omega); norm A*C."""

    field: QuadraticField
    a: int
    b: int
    c: int

    @property
    def norm(self) -> int:
        return self.a * self.c

    def basis_elements(self) -> tuple[QuadElement, QuadElement]:
        k = self.field
        one, om = k.one(), k.omega()
        return one.scale(self.a), one.scale(self.b) + om.scale(self.c)

    def contains(self, el: QuadElement) -> bool:
        u, v = self.field.omega_coords(el)
        if v % self.c:
            return False
        u -= (v // self.c) * self.b
        return u % self.a == 0

    def conjugate(self) -> "QuadIdeal":
        k = self.field
        a1, a2 = self.basis_elements()
        return quad_ideal_from_elements(k, [a1.conj(), a2.conj()])

    def multiply(self, other: "QuadIdeal") -> "QuadIdeal":
        assert self.field == other.field
        gens = [x * y for x in self.basis_elements() for y in other.basis_elements()]
        return quad_ideal_from_elements(self.field, gens)

    def scale(self, n: int) -> "QuadIdeal":
        n = abs(n)
        return QuadIdeal(self.field, self.a * n, self.b * n, self.c * n)

    def is_closed_under_multiplication(self) -> bool:
        om = self.field.omega()
        return all(self.contains(g * om) for g in self.basis_elements())

    def content_and_primitive(self) -> tuple[int, "QuadIdeal"]:
        g = gcd(gcd(self.a, self.b), self.c)
        assert g == self.c, "ideal HNF must have c | a and c | b"
        return self.c, QuadIdeal(self.field, self.a // self.c,
                                 (self.b // self.c) % (self.a // self.c), 1)


def _mul_omega_coords(k: QuadraticField, u: int, v: int) -> tuple[int, int]:
    # (u + v*omega) * omega
    if k.d % 4 == 1:
        return v * (k.d - 1) // 4, u + v
    return v * k.d, u


def quad_ideal_from_elements(k: QuadraticField, gens: list[QuadElement]) -> QuadIdeal:
    rows = []
    for g in gens:
        u, v = k.omega_coords(g)
        rows.append((u, v))
        rows.append(_mul_omega_coords(k, u, v))
    return _quad_ideal_from_rows(k, rows)


def _quad_ideal_from_rows(k: QuadraticField, rows: list[tuple[int, int]]) -> QuadIdeal:
    work = [(u, v) for (u, v) in rows if u or v]
    assert work, "zero ideal"
    # euclidean reduction of the omega column to one pivot row
    while True:
        withv = [r for r in work if r[1]]
        if len(withv) <= 1:
            break
        withv.sort(key=lambda r: abs(r[1]))
        u0, v0 = withv[0]
        new = [(u0, v0)]
        for u, v in withv[1:]:
            q = v // v0
            if (u - q * u0, v - q * v0) != (0, 0):
                new.append((u - q * u0, v - q * v0))
        work = [r for r in work if not r[1]] + new
    pivot = [r for r in work if r[1]]
    assert pivot, "not a full lattice"
    b, c = pivot[0]
    if c < 0:
        b, c = -b, -c
    a = 0
    for u, _ in (r for r in work if not r[1]):
        a = gcd(a, u)
    assert a > 0, "not a full lattice"
    return QuadIdeal(k, a, b % a, c)


@lru_cache(maxsize=None)
def _minpoly_double_root(d: int, p: int) -> int:
    """Root of the minimal polynomial of omega mod ramified p."""
    for r in range(p):
        if d % 4 == 1:
            val = r * r - r - (d - 1) // 4
        else:
            val = r * r - d
        if val % p == 0:
            return r
    raise InconsistencyError  # pragma: no cover


def prime_above(k: QuadraticField, p: int) -> QuadIdeal:
    """The (unique) prime ideal over a ramified prime p."""
    if p not in k.ramified_primes:
        raise DomainError(f"{p} is not ramified in Q(sqrt({k.d}))")
    r = _minpoly_double_root(k.d, p)
    ideal = quad_ideal_from_elements(
        k, [k.one().scale(p), k.omega() - k.one().scale(r)])
    assert ideal.norm == p
    return ideal


# ---------------------------------------------------------------------------
# Principality via binary quadratic forms
# ---------------------------------------------------------------------------


def _ideal_form(k: QuadraticField, a: int, b: int) -> tuple[int, int, int]:
    """Norm form of the primitive ideal [a, b + omega]; discriminant Delta."""
    if k.d % 4 == 1:
        bb = 2 * b + 1
        num = bb * bb - k.d
        assert num % (4 * a) == 0
        return a, bb, num // (4 * a)
    num = b * b - k.d
    assert num % a == 0
    return a, 2 * b, num // a


def _definite_unit_representation(form: tuple[int, int, int]) -> tuple[int, int] | None:
    """Solve a x^2 + b x y + c y^2 = 1 for a positive definite form."""
    a, b, c = form
    disc = b * b - 4 * a * c
    assert disc < 0 and a > 0
    ymax = isqrt(4 * a // -disc)
    for y in range(-ymax, ymax + 1):
        dx = disc * y * y + 4 * a
        if dx < 0:
            continue
        t = isqrt(dx)
        if t * t != dx:
            continue
        for num in (-b * y + t, -b * y - t):
            if num % (2 * a) == 0:
                return num // (2 * a), y
    return None


def _is_reduced_indefinite(a: int, b: int, c: int, delta: int, s: int) -> bool:
    if b <= 0 or b > s:
        return False
    t = 2 * abs(a)
    if delta <= (t - b) * (t - b) and t > b:
        return False
    return delta < (t + b) * (t + b)


def _rho_step(a: int, b: int, c: int, delta: int, s: int) -> tuple[tuple[int, int, int], int]:
    """One reduction/cycle step (a,b,c) -> (c, r, c'), with the matrix column
    multiplier m of [[0,-1],[1,m]]."""
    ac = abs(c)
    if ac > s:
        r = (-b) % (2 * ac)
        if r > ac:
            r -= 2 * ac
    else:
        r = s - ((s + b) % (2 * ac))
    num = r * r - delta
    assert num % (4 * c) == 0
    assert (b + r) % (2 * c) == 0
    return (c, r, num // (4 * c)), (b + r) // (2 * c)


def _indefinite_unit_representation(
    form: tuple[int, int, int], delta: int, budget: Budget | None
) -> tuple[int, int] | None:
    """Solve a x^2 + b x y + c y^2 = +-1 for an indefinite form, by walking
    the cycle of reduced forms with the change of basis tracked."""
    a, b, c = form
    s = isqrt(delta)
    u00, u01, u10, u11 = 1, 0, 0, 1
    f = lambda x, y: form[0] * x * x + form[1] * x * y + form[2] * y * y

    steps = 0
    while not _is_reduced_indefinite(a, b, c, delta, s):
        (a, b, c), m = _rho_step(a, b, c, delta, s)
        u00, u01, u10, u11 = u01, -u00 + m * u01, u11, -u10 + m * u11
        steps += 1
        if budget is not None:
            budget.charge()
        assert steps < 10_000, "reduction failed to terminate"
        assert f(u00, u10) == a

    start = (a, b, c)
    while True:
        if abs(a) == 1:
            assert f(u00, u10) == a
            return u00, u10
        (a, b, c), m = _rho_step(a, b, c, delta, s)
        u00, u01, u10, u11 = u01, -u00 + m * u01, u11, -u10 + m * u11
        if budget is not None:
            budget.charge()
        assert f(u00, u10) == a
        if (a, b, c) == start:
            return None


def principal_generator_quad(
    ideal: QuadIdeal, budget: Budget | None = None, check_input: bool = True
) -> QuadElement | None:
    """Exact generator of the ideal, or None when provably nonprincipal."""
    k = ideal.field
    if check_input and not ideal.is_closed_under_multiplication():
        raise InvalidInputError("lattice is not an ideal (not closed under omega)")
    content, prim = ideal.content_and_primitive()
    form = _ideal_form(k, prim.a, prim.b)
    if k.is_real:
        xy = _indefinite_unit_representation(form, k.delta, budget)
    else:
        xy = _definite_unit_representation(form)
    if xy is None:
        return None
    x, y = xy
    gen = k.from_omega_coords(x * prim.a + y * prim.b, y).scale(content)
    assert abs(gen.norm()) == ideal.norm and ideal.contains(gen)
    return gen


# ---------------------------------------------------------------------------
# Strongly ambiguous classes
# ---------------------------------------------------------------------------


def polya_order_quad(k: QuadraticField) -> int:
    """Order of the group of strongly ambiguous classes: 2**(s - 1 - nu)."""
    return 2 ** (k.s - 1 - k.nu)


class AmbiguousClassesQuad:
    """Enumeration of the classes of products of ramified primes.

    Squares of ramified primes are rational, so the 2**s products with
    exponents 0/1 generate every strongly ambiguous class; two products are
    equivalent iff the product over their symmetric difference is principal.
    """

    def __init__(self, k: QuadraticField, budget: Budget | None = None,
                 disc_bound: int = 10_000_000):
        if abs(k.delta) > disc_bound:
            raise BudgetExceededError(
                f"|Delta| = {abs(k.delta)} exceeds the oracle bound {disc_bound}")
        self.k = k
        self.budget = budget
        self.primes = k.ramified_primes
        self._principal: dict[int, bool] = {0: True}
        self._ideals: dict[int, QuadIdeal] = {}

    def subset_ideal(self, mask: int) -> QuadIdeal:
        if mask not in self._ideals:
            ideal = quad_ideal_from_elements(self.k, [self.k.one()])
            for i, p in enumerate(self.primes):
                if mask >> i & 1:
                    ideal = ideal.multiply(prime_above(self.k, p))
            self._ideals[mask] = ideal
        return self._ideals[mask]

    def is_principal_subset(self, mask: int) -> bool:
        if mask not in self._principal:
            gen = principal_generator_quad(self.subset_ideal(mask), self.budget,
                                           check_input=False)
            self._principal[mask] = gen is not None
        return self._principal[mask]

    def class_representatives(self) -> list[int]:
        """First-seen representatives in lexicographic exponent order."""
        reps: list[int] = []
        for exps in itertools.product((0, 1), repeat=len(self.primes)):
            mask = sum(bit << i for i, bit in enumerate(exps))
            if not any(self.is_principal_subset(mask ^ r) for r in reps):
                reps.append(mask)
        return reps


def ambiguous_oracle_quad(k: QuadraticField, budget: Budget | None = None,
                          disc_bound: int = 10_000_000) -> int:
    """Number of strongly ambiguous classes by direct enumeration; uses no
    closed formula, so it independently checks polya_order_quad."""
    return len(AmbiguousClassesQuad(k, budget, disc_bound).class_representatives())
