# Combinatorial number engines: Roman factorials and coefficients, Stirling
# numbers for all integer degrees, Bernoulli and higher-order Bernoulli
# numbers, elementary symmetric functions.
#
# Everything returns exact rationals (fractions.Fraction, aliased Rat).
# Results are memoized; all functions are pure, so the caches are safe to
# share between threads.
from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import factorial
from typing import Iterable, Sequence

Rat = Fraction


@cache
def roman_factorial(n: int) -> Rat:
    """Roman factorial: n! for n >= 0, (-1)^(n-1)/(-n-1)! for n < 0."""
    if n >= 0:
        return Rat(factorial(n))
    sign = -1 if n % 2 == 0 else 1
    return Rat(sign, factorial(-n - 1))


def roman_number(n: int) -> int:
    """Roman number: n for n != 0, and 1 for n = 0."""
    return n if n != 0 else 1


@cache
def roman_coefficient(j: int, k: int) -> Rat:
    """Roman coefficient: roman_factorial(j) / (roman_factorial(k) * roman_factorial(j-k))."""
    return roman_factorial(j) / (roman_factorial(k) * roman_factorial(j - k))


# Stirling numbers of the first kind for all integer degrees n.  s(n, k) is
# the coefficient of y^k in the falling factorial (y)_n.  For n >= 0 the
# falling factorial is the polynomial y(y-1)...(y-n+1).  For n < 0 it is
# 1/((y+1)(y+2)...(y-n)), whose coefficients form an infinite series; the
# caller supplies the working order bounding how many are determined.
@cache
def _stirling_first_row(n: int, order: int) -> tuple[Rat, ...]:
    if n >= 0:
        # expand y(y-1)...(y-n+1) by repeated multiplication
        coeffs = [Rat(1)]
        for i in range(n):
            shifted = [Rat(0)] + coeffs          # y * p(y)
            for d, c in enumerate(coeffs):
                shifted[d] -= i * c              # -i * p(y)
            coeffs = shifted
        return tuple(coeffs) + (Rat(0),) * max(0, order - len(coeffs))
    # reciprocal of (y+1)(y+2)...(y+m), m = -n, to the requested order
    m = -n
    prod = [Rat(1)]
    for i in range(1, m + 1):
        nxt = [Rat(0)] * (len(prod) + 1)
        for d, c in enumerate(prod):
            nxt[d] += i * c
            nxt[d + 1] += c
        prod = nxt
    # invert the polynomial as a power series: prod * inv = 1
    inv = [Rat(0)] * order
    inv[0] = 1 / prod[0]
    for d in range(1, order):
        acc = Rat(0)
        for i in range(1, min(d, len(prod) - 1) + 1):
            acc += prod[i] * inv[d - i]
        inv[d] = -acc / prod[0]
    return tuple(inv)


def stirling_first(n: int, k: int, order: int = 32) -> Rat:
    """Coefficient of y^k in the falling factorial (y)_n, any integer n."""
    if k < 0:
        raise ValueError("stirling_first requires k >= 0")
    if n < 0 and k >= order:
        raise ValueError("stirling_first requires k < order")
    row = _stirling_first_row(n, order)
    return row[k] if k < len(row) else Rat(0)


@cache
def stirling_second(n: int, k: int) -> Rat:
    """Stirling number of the second kind via the triangular recurrence."""
    if n < 0 or k < 0:
        raise ValueError("stirling_second requires n, k >= 0")
    if n == 0 or k == 0:
        return Rat(1 if n == k else 0)
    if k > n:
        return Rat(0)
    return k * stirling_second(n - 1, k) + stirling_second(n - 1, k - 1)


# Bernoulli numbers B_k are the Hurwitz coefficients of D/(e^D - 1); the
# higher-order numbers B_{k,n} come from the n-th power of that series.
@cache
def _bernoulli_gen_power(n: int, order: int) -> tuple[Rat, ...]:
    # (t/(e^t - 1))^n as plain coefficients, computed by series reciprocal
    # and repeated multiplication; kept local to avoid a circular import
    # with the series engine.
    base = [Rat(1, factorial(k + 1)) for k in range(order)]   # (e^t - 1)/t
    inv = [Rat(0)] * order
    inv[0] = Rat(1)
    for d in range(1, order):
        acc = Rat(0)
        for i in range(1, d + 1):
            acc += base[i] * inv[d - i]
        inv[d] = -acc
    out = [Rat(1)] + [Rat(0)] * (order - 1)
    for _ in range(n):
        nxt = [Rat(0)] * order
        for d in range(order):
            acc = Rat(0)
            for i in range(d + 1):
                acc += out[i] * inv[d - i]
            nxt[d] = acc
        out = nxt
    return tuple(out)


def bernoulli(k: int) -> Rat:
    """Bernoulli number B_k, with B_1 = -1/2."""
    if k < 0:
        raise ValueError("bernoulli requires k >= 0")
    return _bernoulli_gen_power(1, k + 1)[k] * factorial(k)


def bernoulli_higher(k: int, n: int) -> Rat:
    """Higher-order Bernoulli number B_{k,n}: k! times the D^k coefficient of (D/(e^D-1))^n."""
    if k < 0:
        raise ValueError("bernoulli_higher requires k >= 0")
    if n < 1:
        raise ValueError("bernoulli_higher requires n >= 1")
    return _bernoulli_gen_power(n, k + 1)[k] * factorial(k)


def elementary_symmetric(n: int, values: Iterable[Rat]) -> Rat:
    """Coefficient of y^n in the product of (1 + x_k y) over the given values."""
    if n < 0:
        raise ValueError("elementary_symmetric requires n >= 0")
    vals: Sequence[Rat] = [Rat(v) for v in values]
    coeffs = [Rat(1)] + [Rat(0)] * n
    for v in vals:
        for d in range(min(n, len(coeffs) - 1), 0, -1):
            coeffs[d] += v * coeffs[d - 1]
    return coeffs[n]
