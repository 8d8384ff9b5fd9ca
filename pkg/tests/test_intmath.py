import random

import pytest

from polyabiquad.errors import InvalidInputError
from polyabiquad.intmath import (SMALL_PRIMES, factorize, kronecker,
                                 squarefree_decompose, squarefree_part)


def test_squarefree_examples():
    assert (squarefree_decompose(18).squarefree_part,
            squarefree_decompose(18).square_part) == (2, 3)
    assert (squarefree_decompose(-4).squarefree_part,
            squarefree_decompose(-4).square_part) == (-1, 2)
    assert (squarefree_decompose(6).squarefree_part,
            squarefree_decompose(6).square_part) == (6, 1)


def test_squarefree_zero_rejected():
    with pytest.raises(InvalidInputError):
        squarefree_decompose(0)


def test_squarefree_recompose_exhaustive_small():
    for n in range(1, 20_000):
        for m in (n, -n):
            sf = squarefree_decompose(m)
            assert sf.squarefree_part * sf.square_part**2 == m
            assert (sf.squarefree_part > 0) == (m > 0)
            # squarefree: no prime square divides it
            assert all(e == 1 for e in factorize(sf.squarefree_part).values()) \
                or abs(sf.squarefree_part) == 1


def test_squarefree_recompose_random_to_1e6():
    rng = random.Random(7)
    for _ in range(500):
        n = rng.randint(2, 10**6) * rng.choice((1, -1))
        sf = squarefree_decompose(n)
        assert sf.squarefree_part * sf.square_part**2 == n
        assert squarefree_part(sf.squarefree_part) == sf.squarefree_part


def test_kronecker_examples():
    assert kronecker(2, 7) == 1      # 2 = 3^2 mod 7
    assert kronecker(3, 5) == -1
    assert kronecker(12, 3) == 0


def test_kronecker_invalid():
    with pytest.raises(InvalidInputError):
        kronecker(0, 0)


def test_kronecker_matches_euler_criterion():
    # For odd prime p the symbol is the Legendre symbol.
    rng = random.Random(1)
    odd_primes = [p for p in SMALL_PRIMES if p > 2][:200]
    for _ in range(2000):
        p = rng.choice(odd_primes)
        a = rng.randint(-3 * p, 3 * p)
        euler = pow(a % p, (p - 1) // 2, p) if a % p else 0
        euler = -1 if euler == p - 1 else euler
        assert kronecker(a, p) == euler, (a, p)


def test_kronecker_reciprocity_random_odd_pairs():
    from math import gcd
    rng = random.Random(2)
    checked = 0
    while checked < 10_000:
        a = rng.randrange(3, 2000, 2)
        b = rng.randrange(3, 2000, 2)
        if gcd(a, b) != 1:
            continue
        sign = -1 if (a % 4 == 3 and b % 4 == 3) else 1
        assert kronecker(a, b) * kronecker(b, a) == sign
        checked += 1


def test_kronecker_multiplicative_in_n():
    rng = random.Random(3)
    for _ in range(500):
        a = rng.randint(-50, 50)
        m = rng.randint(-40, 40)
        n = rng.randint(-40, 40)
        if (a, m * n) == (0, 0) or m == 0 or n == 0:
            continue
        assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_kronecker_conventions_at_2_and_minus_one():
    assert kronecker(7, 2) == 1 and kronecker(9, 2) == 1
    assert kronecker(3, 2) == -1 and kronecker(5, 2) == -1
    assert kronecker(4, 2) == 0
    assert kronecker(5, -1) == 1 and kronecker(-5, -1) == -1
