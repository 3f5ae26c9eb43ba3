"""The logarithmic ladder: basic sequences at every integer degree.

Harmonic logarithms lambda_n = x^n (log x - H_n) extend the monomials so
that the derivative never kills a term: D lambda_n = |n| lambda_{n-1}
with the roman number |n|. Basic sequences then continue to negative
degrees as Laurent-type windows, truncated at an explicit floor. The
degree -1 element of the forward difference is the expansion of 1/(x+1),
and the classical Newton series of 1/x falls out as a window-exact
resummation with coefficients (m-1)!.
"""
from fractions import Fraction as Rat
from math import factorial

from umbra import (
    apply_operator,
    catalog,
    harmonic_log,
    log_sequence,
    newton_expand,
    roman_shift,
)


def main():
    lam = harmonic_log(-1, 1)  # 1/x as a log-ladder element
    print("harmonic log of degree -1:", lam)

    # the derivative steps down with roman numbers: D (1/x) = -1 * x^(-2)
    d = catalog("derivative")
    print("D lambda_(-1) =", apply_operator(d, lam))

    # the roman shift raises degree by one and annihilates degree -1;
    # that single exception is what makes [D, sigma] = 1 hold everywhere
    sigma = roman_shift(lam)
    print("sigma lambda_(-1) =", sigma, "(annihilated)")
    assert sigma.is_empty
    commutator = apply_operator(d, roman_shift(lam)) - roman_shift(
        apply_operator(d, lam)
    )
    assert commutator == lam

    # forward difference, degree -1: the alternating window of 1/(x+1)
    fd = catalog("forward_difference")
    w = log_sequence(fd, -1, depth=8)
    print("\ndegree -1 basic element of the forward difference:")
    print(" ", w)
    for j in range(8):
        assert w.coefficient(-1 - j) == (-1) ** j

    # Newton expansion of 1/x over falling-factorial tails: the m-th
    # coefficient is (m-1)!, certified window-exactly
    coeffs = newton_expand(lam, depth=8)
    print("\nNewton coefficients of 1/x over inverse falling factorials:")
    print(" ", {m: coeffs[m] for m in sorted(coeffs, reverse=True)})
    for m in range(1, 9):
        assert coeffs[-m] == factorial(m - 1)

    # degree 0 of the forward difference: the asymptotic series whose
    # even tail coefficients are -B_2k/(2k)
    p0 = log_sequence(fd, 0, depth=8)
    print("\ndegree 0 window (digamma-type asymptotic):")
    print(" ", p0)
    assert p0.coefficient(-1) == Rat(1, 2)
    assert p0.coefficient(-2) == Rat(-1, 12)
    assert p0.coefficient(-4) == Rat(1, 120)
    print("\nall assertions passed")


if __name__ == "__main__":
    main()
