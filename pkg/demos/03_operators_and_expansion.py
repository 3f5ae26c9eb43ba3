"""Shift-invariant operators and the expansion theorem.

Every shift-invariant operator is a formal series in the derivative D,
and every delta operator (series of valuation one) can serve as a basis:
any shift-invariant T expands as T = sum_k c_k Q^k / k! with the c_k
recovered by composing T with the inverse of Q. The showcase: the shift
E^a expanded in the forward difference gives the falling factorials
(a)_k, which is Newton's forward difference formula.
"""
from fractions import Fraction as Rat

from umbra import (
    Polynomial,
    apply_to_polynomial,
    catalog,
    expand_in_basis,
    pincherle_derivative,
)


def main():
    fd = catalog("forward_difference")
    print("forward difference series:", fd.series)

    # delta operators annihilate constants and lower degree by one
    p = Polynomial([0, 0, 0, 1])  # x^3
    print("\nDelta x^3 =", apply_to_polynomial(fd.series, p))

    # Newton's formula: E^a = sum_k (a)_k Delta^k / k!
    a = Rat(7, 2)
    shift = catalog("shift", {"a": a})
    coeffs = expand_in_basis(shift.series, fd.series, k_max=6)
    print(f"\nE^{a} in forward-difference powers:")
    falling = Rat(1)
    for k, c in enumerate(coeffs):
        print(f"  c_{k} = {c}")
        assert c == falling
        falling *= a - k

    # the Pincherle derivative turns multiplication-by-x into algebra:
    # (TX - XT) = T', so for T = D it is the identity operator
    d = catalog("derivative")
    dprime = pincherle_derivative(d.series)
    print("\nPincherle derivative of D:", dprime.series)
    assert dprime.series.coefficient(0) == 1

    # and for the forward difference it is the shift E
    fdprime = pincherle_derivative(fd.series)
    print("Pincherle derivative of Delta:", fdprime.series)
    for k in range(6):
        assert fdprime.series.coefficient(k) == Rat(1, [1, 1, 2, 6, 24, 120][k])
    print("\nall assertions passed")


if __name__ == "__main__":
    main()
