"""Exact integer primitives: trial-division factoring at desk scale,
squarefree decomposition, and the Kronecker symbol.

Inputs throughout the package are small (|d| in the hundreds, discriminants
in the thousands), so factoring is plain trial division against a sieve,
extended by odd steps for the occasional larger argument.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError


def _sieve(limit: int) -> list[int]:
    flags = bytearray(limit + 1)
    out = []
    for p in range(2, limit + 1):
        if not flags[p]:
            out.append(p)
            for k in range(p * p, limit + 1, p):
                flags[k] = 1
    return out


SMALL_PRIMES = _sieve(20_000)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {p: exponent}; factorize(+-1) == {}."""
    if n == 0:
        raise InvalidInputError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1 and n <= SMALL_PRIMES[-1] ** 2:
        out[n] = out.get(n, 0) + 1
        return out
    p = SMALL_PRIMES[-1] + 1 if n > 1 else 3
    while n > 1:
        if p * p > n:
            out[n] = out.get(n, 0) + 1
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """n = squarefree_part * square_part**2 with sign carried by the
    squarefree part."""

    input: int
    squarefree_part: int
    square_part: int

    def __post_init__(self):
        assert self.input == self.squarefree_part * self.square_part**2


def squarefree_decompose(n: int) -> SquarefreeDecomposition:
    """Split nonzero n as d*f**2 with d squarefree, sign(d) = sign(n)."""
    if n == 0:
        raise InvalidInputError("0 has no squarefree decomposition")
    d, f = 1 if n > 0 else -1, 1
    for p, e in factorize(n).items():
        if e % 2:
            d *= p
        f *= p ** (e // 2)
    return SquarefreeDecomposition(n, d, f)


def squarefree_part(n: int) -> int:
    return squarefree_decompose(n).squarefree_part


def is_squarefree(n: int) -> bool:
    return abs(squarefree_part(n)) == abs(n)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), fully multiplicative in n, with the standard
    conventions (a|2) = 0, +-1 by a mod 8 and (a|-1) = sign of a."""
    if a == 0 and n == 0:
        raise InvalidInputError("kronecker(0, 0) is undefined")
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: the Jacobi symbol by reciprocity.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0
