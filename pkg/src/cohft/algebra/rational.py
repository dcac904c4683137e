"""Exact rational helpers: Bernoulli numbers, factorials, Gaussian moments."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

BigRational = Fraction


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and flint rationals to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if hasattr(x, "p") and hasattr(x, "q"):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple:
    b = [Fraction(1)]
    for k in range(1, n + 1):
        s = sum(comb(k + 1, j) * b[j] for j in range(k))
        b.append(-s / (k + 1))
    return tuple(b)


def bernoulli(n: int) -> Fraction:
    """B_n with the convention x/(e^x - 1) = sum B_n x^n / n!, so B_1 = -1/2."""
    if n < 0:
        raise ValueError("bernoulli index must be non-negative")
    return _bernoulli_table(n)[n]


def double_factorial(n: int) -> int:
    """n!! with (-1)!! = 0!! = 1."""
    r = 1
    while n > 1:
        r *= n
        n -= 2
    return r


def gaussian_moment(k: int) -> int:
    """E[x^k] for a standard normal x: (k-1)!! for even k, else 0."""
    if k < 0:
        raise ValueError("moment order must be non-negative")
    return 0 if k % 2 else double_factorial(k - 1)


def faber_zagier_a(i: int) -> Fraction:
    """a_i = (6i)! / ((3i)! (2i)!)."""
    return Fraction(factorial(6 * i), factorial(3 * i) * factorial(2 * i))


def faber_zagier_b(i: int) -> Fraction:
    """b_i = a_i (1 + 6i) / (1 - 6i)."""
    return faber_zagier_a(i) * Fraction(1 + 6 * i, 1 - 6 * i)
