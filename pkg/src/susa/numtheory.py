"""Factorization, regularity, reciprocals and exact square roots.

Square roots are taken the way a scribe who could factor would take them:
factor numerator and denominator, check every exponent is even, halve the
exponents.  Factoring is plain trial division (sieved small primes, then a
2-3-5 wheel) with a hard upper bound of 10**15.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivisionByZero,
    NegativeInput,
    NonPositive,
    NotPerfectSquare,
    OutOfBudget,
)
from .numeral import Numberish, exact

FACTOR_LIMIT = 10**15
TABLE_LIMIT = 10**6

# gaps between successive integers coprime to 30, starting from 7
_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)
# small trial divisors come from a sieve; the wheel takes over past this
_SIEVE_LIMIT = 1 << 16


@functools.lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    flags = bytearray([1]) * (_SIEVE_LIMIT + 1)
    flags[0] = flags[1] = 0
    for i in range(2, int(_SIEVE_LIMIT**0.5) + 1):
        if flags[i]:
            flags[i * i::i] = bytes(len(range(i * i, _SIEVE_LIMIT + 1, i)))
    return tuple(i for i in range(7, _SIEVE_LIMIT + 1) if flags[i])


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def _check_budget(n) -> int:
    """``n`` as a plain int within the factoring budget; integral Fractions are accepted."""
    if isinstance(n, Fraction) and n.denominator == 1:
        n = n.numerator
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected an integer, got {n!r}")
    if n < 1:
        raise NonPositive(f"{n} is not a positive integer")
    if n > FACTOR_LIMIT:
        raise OutOfBudget(f"{n} exceeds the trial-division budget of 10**15")
    return n


def factor(n: int) -> Factorization:
    n = _check_budget(n)
    factors = []
    rest = n
    for p in (2, 3, 5):
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            factors.append((p, e))
    for d in _small_primes():
        if d * d > rest:
            break
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            factors.append((d, e))
    else:
        # resume at the wheel cycle holding the sieve limit; a few repeats are harmless
        d, i = 7 + 30 * ((_SIEVE_LIMIT - 7) // 30), 0
        while d * d <= rest:
            if rest % d == 0:
                e = 0
                while rest % d == 0:
                    rest //= d
                    e += 1
                factors.append((d, e))
            d += _WHEEL[i]
            i = (i + 1) % 8
    if rest > 1:
        factors.append((rest, 1))
    return Factorization(n, tuple(factors))


def is_regular(n: int) -> bool:
    """True iff ``n`` has no prime factor other than 2, 3 and 5."""
    n = _check_budget(n)
    for p in (2, 3, 5):
        while n % p == 0:
            n //= p
    return n == 1


def _isqrt_by_factoring(n: int) -> int:
    if n == 0:
        return 0
    root = 1
    for p, e in factor(n).factors:
        if e % 2:
            raise NotPerfectSquare(f"{n} is not a perfect square ({p}^{e})")
        root *= p ** (e // 2)
    return root


def sqrt_exact(v: Numberish) -> Fraction:
    v = exact(v)
    if v < 0:
        raise NegativeInput(f"square root of negative {v}")
    try:
        return Fraction(_isqrt_by_factoring(v.numerator), _isqrt_by_factoring(v.denominator))
    except NotPerfectSquare:
        raise NotPerfectSquare(f"{v} is not the square of a rational") from None


def reciprocal(v: Numberish) -> Fraction:
    v = exact(v)
    if v == 0:
        raise DivisionByZero("0 has no reciprocal")
    return 1 / v


def reciprocal_table(limit: int) -> list[tuple[int, Fraction]]:
    """Every regular n in 1..limit with its reciprocal, ascending."""
    if isinstance(limit, bool) or not isinstance(limit, int):
        raise TypeError("limit must be an integer")
    if limit < 1:
        raise NonPositive(f"table limit {limit} is not positive")
    if limit > TABLE_LIMIT:
        raise OutOfBudget(f"table limit {limit} exceeds 10**6")
    regular = []
    p2 = 1
    while p2 <= limit:
        p3 = p2
        while p3 <= limit:
            p5 = p3
            while p5 <= limit:
                regular.append(p5)
                p5 *= 5
            p3 *= 3
        p2 *= 2
    return [(n, Fraction(1, n)) for n in sorted(regular)]
