"""Numeric evaluation at the boundary of the exact world.

All identities inside the package are exact rational statements about
windows. Numbers appear only at the very end, when a window is evaluated
at a rational point with decimal arithmetic and an honest bound on the
truncated tail. The showcase: the degree-0 window of the forward
difference evaluated at x = 10 reproduces the digamma value psi(11) to
within its own tail bound.
"""
from decimal import Decimal
from fractions import Fraction as Rat

from umbra import catalog, evaluate_numeric, log_sequence, run_suite, tail_bound


def main():
    fd = catalog("forward_difference", order=40)
    p0 = log_sequence(fd, 0, depth=16)
    value = evaluate_numeric(p0, Rat(10), precision=30)
    bound = tail_bound(p0, Rat(10), precision=30)
    print("degree-0 window of the forward difference at x = 10")
    print("  value      =", value)
    print("  tail bound =", bound)

    # reference value computed independently to 30 digits
    reference = Decimal("2.35175258906672110764745616389")
    print("  reference  =", reference)
    assert abs(value - reference) < bound

    # the numeric identity suite: a 12-term shifted-log expansion of
    # ln(x+a) + b/(x+a) agrees to better than 1e-7, and the two-sided
    # window identity collapses exactly
    report = run_suite("abel_numeric")
    print("\nnumeric suite:", report["status"])
    print("  |difference 1| =", report["difference_1"], "(tolerance 1e-7)")
    print("  |difference 2| =", report["difference_2"], "(window-exact)")
    assert report["status"] == "pass"
    print("\nall assertions passed")


if __name__ == "__main__":
    main()
