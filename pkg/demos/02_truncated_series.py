"""Formal power series with explicit precision windows.

Every series carries its own truncation order, and arithmetic propagates
the window honestly: multiplying an exact polynomial by an O(t^8) series
gives an O(t^8) result, never a silently over-precise one. Exact series
(order = infinity) stay exact under operations that cannot lose terms.
"""
from fractions import Fraction as Rat

from umbra import (
    INF,
    compose,
    compositional_inverse,
    constant,
    exp_series,
    from_coeffs,
    identity,
    log_series,
    monomial,
    mul,
    reciprocal,
)


def main():
    t = identity()
    print("the identity series:", t, "with order", t.order)

    # exp and log are built by the usual recurrences at a chosen order
    e = exp_series(t, order=8)
    print("\nexp(t) to O(t^8):", e)
    lg = log_series(e)
    print("log(exp(t)) recovers t:", lg)
    assert lg.coefficient(1) == 1 and lg.coefficient(2) == 0

    # precision tracking: an O(t^4) factor caps the product window
    short = from_coeffs([0, 1, 1], order=4)
    prod = mul(e, short)
    print("\nexp(t) * (t + t^2 + O(t^4)) has order", prod.order)
    assert prod.order == 4

    # reciprocals of exact monomials stay exact
    inv = reciprocal(monomial(2, Rat(3)))
    print("1 / (3t^2) =", inv, "with order", inv.order)
    assert inv.order == INF

    # compositional inverse: the series g with g(f(t)) = t; note the
    # exact constant keeps the O(t^8) window of e intact
    f = e - constant(1)  # exp(t) - 1
    g = compositional_inverse(f)
    print("\ninverse of exp(t)-1:", g)
    roundtrip = compose(g, f)
    print("g(f(t)) =", roundtrip)
    for k in range(2, roundtrip.order):
        assert roundtrip.coefficient(k) == 0
    # and the inverse is log(1+t): coefficient (-1)^(k-1)/k
    for k in range(1, g.order):
        assert g.coefficient(k) == Rat((-1) ** (k - 1), k)
    print("\nall assertions passed")


if __name__ == "__main__":
    main()
