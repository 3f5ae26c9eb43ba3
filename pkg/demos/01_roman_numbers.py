"""Tour of the combinatorial number layer.

The roman factorial extends n! to every integer: for n >= 0 it is the
usual factorial, and for negative n it is the reciprocal of a factorial
with an alternating sign. That one definition makes the quotient rule
for falling powers work at every integer degree, which is what the
logarithmic ladder in the rest of the package is built on.
"""
from fractions import Fraction as Rat

from umbra import (
    bernoulli,
    roman_coefficient,
    roman_factorial,
    roman_number,
    stirling_first,
    stirling_second,
)


def main():
    print("roman factorials |n|! for n = -4..4")
    for n in range(-4, 5):
        print(f"  |{n:2d}|! = {roman_factorial(n)}")
    # negative values interlock with the positive ones:
    # |-m|! = (-1)^(m-1) / (m-1)!
    assert roman_factorial(-3) == Rat(1, 2)
    assert roman_factorial(-4) == Rat(-1, 6)

    print("\nroman numbers |n| (n itself, except |0| = 1)")
    print(" ", [roman_number(n) for n in range(-3, 4)])

    print("\nroman coefficients |0 choose k| = (-1)^(k+1)/k")
    for k in range(1, 6):
        print(f"  |0|{k}| = {roman_coefficient(0, k)}")
        assert roman_coefficient(0, k) == Rat((-1) ** (k + 1), k)

    print("\nsigned Stirling numbers of the first kind, row n = 5")
    row = [stirling_first(5, k) for k in range(6)]
    print(" ", row)
    # the row sums telescope: sum_k s(n,k) x^k = x(x-1)...(x-n+1) at x = 1
    assert sum(row) == 0

    print("\nStirling numbers of the second kind, row n = 5")
    print(" ", [stirling_second(5, k) for k in range(6)])

    print("\nBernoulli numbers B_0..B_8")
    print(" ", [bernoulli(k) for k in range(9)])
    assert bernoulli(8) == Rat(-1, 30)
    print("\nall assertions passed")


if __name__ == "__main__":
    main()
