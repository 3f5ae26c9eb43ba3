# Tests for harmonic logarithms: windowed coefficient algebra, the roman
# shift, logarithmic basic sequences with their Laurent tails, Newton
# expansion, and the numeric evaluation boundary.
from decimal import Decimal
from fractions import Fraction as Rat
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from umbra.errors import PreconditionError
from umbra.logarithmic import (
    NEG_INF,
    HarmonicLogSeries,
    LogBinomialSequence,
    apply_operator,
    augmentation,
    evaluate_numeric,
    harmonic_log,
    log_conjugate_sequence,
    log_lower_factorial,
    log_sequence,
    monomial_expansion,
    newton_expand,
    residual_term,
    roman_shift,
    skip,
    tail_bound,
)
from umbra.numbers import (
    bernoulli,
    roman_coefficient,
    roman_factorial,
    roman_number,
)
from umbra.operators import catalog
from umbra.series import INF, from_coeffs, int_pow, monomial

rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
).filter(lambda q: q != 0)


def harmonic_number(n):
    return sum(Rat(1, i) for i in range(1, n + 1))


class TestMonomialExpansion:
    def test_order_one_nonnegative(self):
        # [DERIVED] lambda_n^(1) = x^n (log x - H_n): differentiating
        # x^n (log x - H_n) gives n x^(n-1) (log x - H_(n-1)) by the
        # harmonic-number recurrence, and n = 0 gives log x.
        for n in range(0, 7):
            assert monomial_expansion(n, 1) == (
                {1: 1, 0: -harmonic_number(n)} if n else {1: 1}
            )

    def test_order_one_negative(self):
        # [DERIVED] lambda_(-m)^(1) = x^(-m) with no log factor: the
        # roman factorial (-1)^(m-1)/(m-1)! cancels the Stirling value
        # s(m, 1) = (-1)^(m-1) (m-1)!.
        for m in range(1, 8):
            assert monomial_expansion(-m, 1) == {0: 1}

    def test_order_zero_is_monomial(self):
        for n in range(0, 6):
            assert monomial_expansion(n, 0) == {0: 1}

    def test_order_two_samples(self):
        # [DERIVED] by hand from the closed form: lambda_0^(2) = (log x)^2,
        # lambda_1^(2) = x((log x)^2 - 2 log x + 2), and
        # lambda_(-1)^(2) = 2 log(x)/x.
        assert monomial_expansion(0, 2) == {2: 1}
        assert monomial_expansion(1, 2) == {2: 1, 1: -2, 0: 2}
        assert monomial_expansion(-1, 2) == {1: 2}


class TestWindowAlgebra:
    def test_construction_drops_zero_and_below_floor(self):
        s = HarmonicLogSeries({2: 1, 0: 0, -3: 5}, floor=-2)
        assert s.coeffs == {2: Rat(1)}
        assert s.floor == -2
        assert s.top == 2

    def test_order_zero_drops_negative_degrees(self):
        s = HarmonicLogSeries({1: 2, -1: 7}, floor=-4, order_t=0)
        assert s.coeffs == {1: Rat(2)}
        assert s.floor == NEG_INF

    def test_empty_window_top(self):
        s = HarmonicLogSeries({}, floor=3)
        assert s.is_empty
        assert s.top == 2

    def test_coefficient_below_floor_raises(self):
        s = HarmonicLogSeries({0: 1}, floor=-2)
        assert s.coefficient(-2) == 0
        with pytest.raises(PreconditionError, match="below window floor"):
            s.coefficient(-3)

    def test_truncate_floor_only_rises(self):
        s = HarmonicLogSeries({1: 1, -1: 2}, floor=-3)
        t = s.truncate_floor(-1)
        assert t.coeffs == {1: Rat(1), -1: Rat(2)}
        assert t.floor == -1
        with pytest.raises(PreconditionError, match="truncation too small"):
            s.truncate_floor(-5)

    def test_add_same_order(self):
        a = HarmonicLogSeries({1: 1, 0: 2}, floor=-2)
        b = HarmonicLogSeries({0: -2, -1: 3}, floor=-1)
        c = a + b
        assert c.coeffs == {1: Rat(1), -1: Rat(3)}
        assert c.floor == -1

    def test_add_different_orders_raises(self):
        with pytest.raises(PreconditionError, match="different orders"):
            harmonic_log(0, 1) + harmonic_log(0, 2)

    def test_scale_zero_gives_exact_zero(self):
        s = HarmonicLogSeries({1: 1}, floor=-5)
        z = s.scale(0)
        assert z.is_empty and z.is_exact

    def test_agrees_with_respects_windows(self):
        deep = HarmonicLogSeries({0: 1, -1: 2, -2: 3}, floor=-2)
        shallow = HarmonicLogSeries({0: 1, -1: 2}, floor=-1)
        other = HarmonicLogSeries({0: 1, -1: 5}, floor=-1)
        assert deep.agrees_with(shallow)
        assert not deep.agrees_with(other)

    def test_skip_relabels_order(self):
        s = HarmonicLogSeries({1: 2, -1: 3}, floor=-4)
        up = skip(s, 2)
        assert up.order_t == 2 and up.coeffs == s.coeffs
        down = skip(s, 0)
        # moving to order zero forgets the negative-degree tail entirely
        assert down.coeffs == {1: Rat(2)}
        assert down.is_exact


class TestDerivativeAction:
    def test_derivative_lowers_degree_by_roman_number(self):
        # [DERIVED] d/dx of x^n (log x - H_n) is n x^(n-1) (log x - H_(n-1))
        # for n >= 1, 1/x for n = 0, and -m x^(-m-1) for degree -m; all
        # three cases read D lambda_n = roman(n) lambda_(n-1).
        D = catalog("derivative")
        for n in range(-5, 6):
            img = apply_operator(D, harmonic_log(n, 1))
            assert img == harmonic_log(n - 1, 1).scale(roman_number(n))

    def test_repeated_derivative_roman_ratio(self):
        D = catalog("derivative")
        for n in range(-4, 5):
            s = harmonic_log(n, 1)
            for k in range(1, 5):
                s = apply_operator(D, s)
                want = roman_factorial(n) / roman_factorial(n - k)
                assert s == harmonic_log(n - k, 1).scale(want)

    def test_exact_operator_preserves_exactness(self):
        img = apply_operator(catalog("derivative"), harmonic_log(3, 2))
        assert img.is_exact

    def test_nothing_annihilated_at_positive_order(self):
        D = catalog("derivative")
        for t in (1, 2):
            img = apply_operator(D, harmonic_log(0, t))
            assert not img.is_empty


class TestWindowRules:
    def test_finite_order_operator_sets_floor(self):
        # an order-N series in D determines N coefficients below the top
        fd = catalog("forward_difference", order=6)
        img = apply_operator(fd, harmonic_log(2, 1))
        assert img.top == 1
        assert img.floor == 2 - 6 + 1

    def test_floor_shifts_by_valuation(self):
        s = HarmonicLogSeries({0: 1}, floor=-3)
        img = apply_operator(monomial(2), s)  # the operator D^2
        assert img.floor == -5
        assert img.top == -2

    def test_floor_combines_both_limits(self):
        s = HarmonicLogSeries({0: 1}, floor=-10)
        fd = catalog("forward_difference", order=4)
        img = apply_operator(fd, s)
        # tail limit 0 - 4 + 1 = -3 dominates the floor limit -11
        assert img.floor == -3


class TestRomanShift:
    def test_shift_raises_degree(self):
        for n in (-4, -2, 0, 1, 3):
            assert roman_shift(harmonic_log(n, 1)) == harmonic_log(n + 1, 1)

    def test_shift_annihilates_degree_minus_one(self):
        img = roman_shift(harmonic_log(-1, 1))
        assert img.is_empty and img.is_exact

    def test_commutator_with_derivative_is_identity(self):
        # [DERIVED] D sigma - sigma D = 1 on every basis element: both
        # sides evaluated on lambda_n give roman(n+1) resp. roman(n)
        # copies of lambda_n, and roman(n+1) - roman(n) is 1 except at
        # n = -1, 0 where the annihilation resp. roman(0) = 1 adjust it.
        D = catalog("derivative")
        for t in (1, 2):
            for n in range(-6, 7):
                s = harmonic_log(n, t)
                lhs = apply_operator(D, roman_shift(s)) - roman_shift(
                    apply_operator(D, s)
                )
                assert lhs == s

    def test_commutator_with_higher_powers(self):
        # [DERIVED] D^k sigma - sigma D^k = k D^(k-1), the Pincherle
        # derivative of D^k seen on the logarithmic basis.
        for k in range(1, 5):
            Dk = monomial(k)
            Dk1 = monomial(k - 1, Rat(k))
            for n in range(-5, 6):
                s = harmonic_log(n, 1)
                lhs = apply_operator(Dk, roman_shift(s)) - roman_shift(
                    apply_operator(Dk, s)
                )
                assert lhs == apply_operator(Dk1, s)

    def test_shift_floor_bookkeeping(self):
        s = HarmonicLogSeries({1: 1}, floor=-2)
        assert roman_shift(s).floor == -1
        # a floor at zero stays at zero: the only source of degree zero
        # is the annihilated degree -1
        s0 = HarmonicLogSeries({1: 1}, floor=0)
        assert roman_shift(s0).floor == 0


class TestLogBinomialTheorem:
    @given(a=rationals, n=st.integers(min_value=-4, max_value=4))
    @settings(max_examples=40, deadline=None)
    def test_shift_expands_with_roman_coefficients(self, a, n):
        # the binomial theorem for harmonic logarithms:
        # E^a lambda_n = sum_k roman(n|k) a^k lambda_(n-k)
        E = catalog("shift", {"a": a}, order=12)
        img = apply_operator(E, harmonic_log(n, 1))
        for k in range(0, 12):
            assert img.coefficient(n - k) == roman_coefficient(n, k) * a**k

    def test_degree_zero_shift_is_log_of_ratio(self):
        # [DERIVED] E^1 log x = log(x + 1) = log x + sum (-1)^(k+1)/k x^-k
        E = catalog("shift", {"a": 1}, order=10)
        img = apply_operator(E, harmonic_log(0, 1))
        assert img.coefficient(0) == 1
        for k in range(1, 10):
            assert img.coefficient(-k) == Rat((-1) ** (k + 1), k)


class TestAugmentation:
    def test_augmentation_picks_degree_zero(self):
        s = HarmonicLogSeries({2: 5, 0: 7, -1: 3}, floor=-2)
        assert augmentation(s) == 7

    def test_augmentation_other_order_is_zero(self):
        assert augmentation(harmonic_log(0, 1), t=2) == 0

    def test_augmentation_outside_window_raises(self):
        s = HarmonicLogSeries({3: 1}, floor=2)
        with pytest.raises(PreconditionError, match="augmentation outside window"):
            augmentation(s)


class TestLogSequences:
    def test_derivative_sequence_is_basis(self):
        for n in (-3, 0, 2):
            s = log_sequence(catalog("derivative"), n, depth=6)
            assert s.coeffs == {n: Rat(1)}
            assert s.floor == n - 5

    def test_recurrence_forward_difference(self):
        # defining property: FD p_n = roman(n) p_(n-1) on the window overlap
        fd = catalog("forward_difference", order=24)
        seq = LogBinomialSequence(fd, depth=10)
        for n in range(-3, 5):
            img = apply_operator(fd, seq[n])
            assert img.agrees_with(seq[n - 1].scale(roman_number(n)))

    def test_recurrence_abel(self):
        ab = catalog("abel", {"b": Rat(1, 2)}, order=24)
        seq = LogBinomialSequence(ab, depth=8)
        for n in range(-2, 4):
            img = apply_operator(ab, seq[n])
            assert img.agrees_with(seq[n - 1].scale(roman_number(n)))

    def test_augmentation_is_kronecker_delta(self):
        fd = catalog("forward_difference", order=24)
        for n in range(-3, 5):
            assert augmentation(log_sequence(fd, n, depth=10)) == (
                1 if n == 0 else 0
            )

    def test_positive_part_matches_classical_polynomials(self):
        # for n >= 0 the coefficients in degrees 0..n are the classical
        # falling-factorial coefficients (Stirling numbers of the first kind)
        from umbra.numbers import stirling_first

        fd = catalog("forward_difference", order=20)
        for n in range(0, 5):
            s = log_sequence(fd, n, depth=8)
            for k in range(0, n + 1):
                assert s.coefficient(k) == stirling_first(n, k)

    def test_lower_factorial_degree_three_window(self):
        # [DERIVED] frozen window: the classical polynomial x^3 - 3x^2 + 2x
        # continues into an infinite Laurent tail
        s = log_lower_factorial(3, depth=10)
        assert s.coefficient(3) == 1
        assert s.coefficient(2) == -3
        assert s.coefficient(1) == 2
        assert s.coefficient(0) == 0
        assert s.coefficient(-1) == Rat(-19, 120)
        assert s.coefficient(-2) == Rat(-1, 40)
        assert s.coefficient(-3) == Rat(4, 315)
        assert s.coefficient(-4) == Rat(1, 84)
        assert s.coefficient(-5) == Rat(-19, 5040)
        assert s.coefficient(-6) == Rat(-1, 80)

    def test_degree_zero_is_digamma_series(self):
        # [DERIVED] the degree-0 term has the asymptotic expansion of the
        # digamma function at x + 1: log x + 1/(2x) - sum B_2k/(2k x^2k)
        s = log_lower_factorial(0, depth=16)
        assert s.coefficient(0) == 1
        assert s.coefficient(-1) == Rat(1, 2)
        for k in range(1, 8):
            assert s.coefficient(-2 * k) == -bernoulli(2 * k) / (2 * k)
        for k in range(2, 8):
            assert s.coefficient(-(2 * k - 1)) == 0

    def test_residual_forward_difference_is_geometric(self):
        # [DERIVED] (x)_(-1) = 1/(x + 1) = sum (-1)^k x^(-1-k)
        s = residual_term(catalog("forward_difference", order=20), depth=10)
        for k in range(0, 10):
            assert s.coefficient(-1 - k) == (-1) ** k

    def test_residual_backward_difference_is_all_ones(self):
        # [DERIVED] the backward-difference residual is E^(-1) x^(-1)
        # = 1/(x - 1) = sum x^(-1-k)
        bd = catalog("backward_difference", order=20)
        s = residual_term(bd, depth=10)
        for k in range(0, 10):
            assert s.coefficient(-1 - k) == 1

    def test_lower_factorial_degree_minus_two(self):
        # [DERIVED] partial fractions of 1/((x+1)(x+2)) give coefficients
        # (-1)^k (2^(k+1) - 1) at degree -2-k
        s = log_lower_factorial(-2, depth=8)
        for k in range(0, 8):
            assert s.coefficient(-2 - k) == (-1) ** k * (2 ** (k + 1) - 1)

    def test_bernoulli_cross_check_runs(self):
        # the n >= 0 construction recomputes each window through the
        # higher-order Bernoulli route and raises on any mismatch
        for n in range(0, 6):
            log_lower_factorial(n, depth=8)

    def test_sequence_caches_terms(self):
        seq = LogBinomialSequence(catalog("forward_difference", order=20), depth=6)
        a = seq[2]
        assert seq[2] is a
        assert seq.residual is seq[-1]

    def test_non_delta_rejected(self):
        with pytest.raises(PreconditionError, match="not a delta series"):
            log_sequence(catalog("weierstrass", order=10), 0)
        with pytest.raises(PreconditionError, match="not a delta series"):
            LogBinomialSequence(catalog("shift", {"a": 1}, order=10))

    def test_window_exhaustion_raises(self):
        fd = catalog("forward_difference", order=6)
        with pytest.raises(PreconditionError, match="truncation too small"):
            log_sequence(fd, 0, depth=12)


class TestAbelLogSequence:
    def test_degree_zero_terminates(self):
        # [DERIVED] transfer f'(f/t)^(-1) = (1 + bD): the degree-0 term is
        # exactly log x + b/x with a window of known zeros below
        ab = catalog("abel", {"b": Rat(2)}, order=24)
        s = log_sequence(ab, 0, depth=8)
        assert s.coefficient(0) == 1
        assert s.coefficient(-1) == 2
        for d in range(-2, -8, -1):
            assert s.coefficient(d) == 0

    def test_degree_one_tail(self):
        # [DERIVED] A_1 = lambda_1 - sum_(j>=2) (b^j / j) lambda_(1-j)
        b = Rat(2)
        s = log_sequence(catalog("abel", {"b": b}, order=24), 1, depth=8)
        assert s.coefficient(1) == 1
        assert s.coefficient(0) == 0
        for j in range(2, 8):
            assert s.coefficient(1 - j) == -(b**j) / j

    def test_negative_degrees_closed_form(self):
        # [DERIVED] A_(-k)(x) = x / (x + kb)^(k+1), whose expansion has
        # coefficient C(j+k, k) (-kb)^j at degree -k-j
        b = Rat(2)
        ab = catalog("abel", {"b": b}, order=28)
        for k in (1, 2, 3):
            s = log_sequence(ab, -k, depth=8)
            for j in range(0, 7):
                assert s.coefficient(-k - j) == comb(j + k, k) * (-k * b) ** j


class TestLaguerreLogSequence:
    def test_degree_zero_factorial_tail(self):
        # [DERIVED] L_0 = log x + sum_(j>=1) (-1)^(j-1) (j-1)! x^(-j):
        # the tail grows factorially, the signature of a divergent
        # asymptotic expansion
        s = log_sequence(catalog("laguerre", order=24), 0, depth=9)
        assert s.coefficient(0) == 1
        for j in range(1, 9):
            assert s.coefficient(-j) == (-1) ** (j - 1) * factorial(j - 1)


class TestGoldenIdentity:
    def test_inverse_difference_residues(self):
        # [DERIVED] <FD^(-m) x^(-1)> = (-1)^(m+1)
        fd = catalog("forward_difference", order=24)
        lam = harmonic_log(-1, 1)
        for m in range(1, 8):
            img = apply_operator(int_pow(fd.series, -m), lam)
            assert augmentation(img) == (-1) ** (m + 1)

    def test_newton_coefficients_of_inverse_x(self):
        # [DERIVED] 1/x = sum_(m>=1) (m-1)! (x)_(-m): Newton coefficients
        # a_(-m) = (m-1)!
        coeffs = newton_expand(harmonic_log(-1, 1), depth=8)
        for m in range(1, 9):
            assert coeffs[-m] == factorial(m - 1)

    def test_resummation_telescopes(self):
        # [DERIVED] with (x)_(-m) = 1/((x+1)...(x+m)) the partial sums of
        # sum (m-1)! (x)_(-m) telescope to 1/x - M!/(x (x+1)...(x+M))
        x = Rat(2)
        total = Rat(0)
        for m in range(1, 13):
            term = Rat(factorial(m - 1))
            for i in range(1, m + 1):
                term /= x + i
            total += term
        remainder = Rat(factorial(12))
        for i in range(1, 13):
            remainder /= x + i
        assert total == 1 / x - remainder / x

    def test_newton_reconstructs_window(self):
        # resumming the Newton coefficients against the lower factorial
        # windows reproduces 1/x through 12 inverse powers
        depth = 12
        coeffs = newton_expand(harmonic_log(-1, 1), depth=depth)
        acc = HarmonicLogSeries({}, floor=-depth, order_t=1)
        for m in range(1, depth + 1):
            acc = acc + log_lower_factorial(-m, depth=depth).truncate_floor(
                -depth
            ).scale(coeffs[-m])
        assert acc.agrees_with(harmonic_log(-1, 1).truncate_floor(-depth))


class TestLogConjugate:
    def test_conjugate_of_forward_difference(self):
        # [DERIVED] expanding x^(-1) over the conjugate ladder of FD gives
        # the same (m-1)! ladder as the Newton expansion
        fd = catalog("forward_difference", order=30)
        s = log_conjugate_sequence(fd, -1, depth=6)
        for m in range(1, 7):
            assert s.coefficient(-m) == factorial(m - 1)


class TestNumericBoundary:
    def test_pure_power_evaluates_exactly(self):
        v = evaluate_numeric(harmonic_log(-2, 1), Rat(1, 4), 20)
        assert v == Decimal(16)

    def test_log_at_one_vanishes(self):
        assert evaluate_numeric(harmonic_log(0, 1), 1, 20) == 0

    def test_order_two_element(self):
        # lambda_(-1)^(2) = 2 log(x)/x
        import decimal

        x = Rat(5)
        v = evaluate_numeric(harmonic_log(-1, 2), x, 25)
        with decimal.localcontext() as ctx:
            ctx.prec = 30
            want = 2 * Decimal(5).ln() / 5
        assert abs(v - want) < Decimal("1e-24")

    def test_digamma_value(self):
        # [DERIVED] psi(11) = 2.35175258906672110764745616389 (independent
        # high-precision digamma evaluation); the depth-20 window at x = 10
        # agrees to its tail bound of about 1.6e-20
        s = log_lower_factorial(0, depth=20)
        v = evaluate_numeric(s, 10, 25)
        ref = Decimal("2.35175258906672110764745616389")
        assert abs(v - ref) < Decimal("1e-18")

    def test_windowed_recurrence_numerically(self):
        # FD p_1 evaluated from the window equals p_0 evaluated from its
        # window, far below the size of either tail
        p0 = log_lower_factorial(0, depth=16)
        p1 = log_lower_factorial(1, depth=16)
        v = evaluate_numeric(p1, 21, 30) - evaluate_numeric(p1, 20, 30)
        w = evaluate_numeric(p0, 20, 30)
        assert abs(v - w) < Decimal("1e-15")

    def test_residual_value_within_tail_bound(self):
        # (x)_(-1) = 1/(x+1): the window evaluation at x = 10 differs from
        # 1/11 by less than the reported geometric tail bound
        s = residual_term(catalog("forward_difference", order=24), depth=12)
        x = Rat(10)
        v = evaluate_numeric(s, x, 25)
        truth = Decimal(1) / Decimal(11)
        bound = tail_bound(s, x, 25)
        assert bound is not None and bound > 0
        assert abs(v - truth) <= bound

    def test_tail_bound_exact_series_is_zero(self):
        assert tail_bound(harmonic_log(2, 1), 3) == Decimal(0)

    def test_tail_bound_refuses_divergent_point(self):
        # the Laguerre tail grows factorially; inside its growth radius no
        # geometric continuation is safe
        s = log_sequence(catalog("laguerre", order=24), 0, depth=12)
        assert tail_bound(s, 5) is None
        assert tail_bound(s, 100) is not None

    def test_nonpositive_point_rejected(self):
        with pytest.raises(PreconditionError, match="requires x0 > 0"):
            evaluate_numeric(harmonic_log(0, 1), 0)
        with pytest.raises(PreconditionError, match="requires x0 > 0"):
            tail_bound(harmonic_log(0, 1), Rat(-3))
