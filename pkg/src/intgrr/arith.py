"""Exact integer and rational helpers: factorials, Bernoulli numbers and the
Todd denominators ``T_m``.

All values are Python ``int`` or :class:`fractions.Fraction`, so nothing
overflows and integrality tests are exact.

Bernoulli convention
--------------------
``bernoulli(1) == -1/2``.  With this sign choice

    x / (1 - exp(-x)) = sum_n (-1)^n B_n x^n / n!

which is the form used for the Todd series everywhere in this package.  The
other common convention (``B_1 = +1/2``) would flip the sign of the linear
Todd term and silently corrupt every Todd class.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import primerange

__all__ = [
    "Fraction",
    "ScalingConstants",
    "bernoulli",
    "factorial",
    "is_integral",
    "jam_constant",
    "p_adic_valuation",
    "scaling_constants",
    "todd_series",
]


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return math.factorial(n)


@lru_cache(maxsize=None)
def jam_constant(m: int) -> int:
    """Return ``T_m``, the product over primes ``p`` of ``p ** (m // (p - 1))``.

    Primes above ``m + 1`` get exponent zero, so only ``p <= m + 1`` enter.
    """
    if m < 0:
        raise ValueError(f"T_m needs m >= 0, got {m}")
    out = 1
    for p in primerange(2, m + 2):
        out *= p ** (m // (p - 1))
    return out


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    table = [Fraction(1)]
    for k in range(1, n + 1):
        # sum_{j<=k} C(k+1, j) B_j = 0
        acc = sum(math.comb(k + 1, j) * table[j] for j in range(k))
        table.append(-acc / (k + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``B_n`` with ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError(f"bernoulli needs n >= 0, got {n}")
    return _bernoulli_table(n)[n]


@lru_cache(maxsize=None)
def todd_series(order: int) -> tuple[Fraction, ...]:
    """Coefficients of ``x/(1-exp(-x))`` up to and including ``x**order``."""
    return tuple((-1) ** n * bernoulli(n) / math.factorial(n) for n in range(order + 1))


def is_integral(q) -> bool:
    if isinstance(q, int):
        return True
    return Fraction(q).denominator == 1


def p_adic_valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    n, v = abs(n), 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class ScalingConstants:
    m: int
    factorial_m: int
    jam_m: int

    @property
    def ratio(self) -> int:
        """``T_m / m!``, always an integer."""
        return self.jam_m // self.factorial_m


def scaling_constants(m: int) -> ScalingConstants:
    return ScalingConstants(m, factorial(m), jam_constant(m))
