# Tests for binomial-type sequences: generator agreement, closed forms,
# Taylor expansion, umbral composition, connection constants.
from fractions import Fraction as Rat
from math import comb, factorial

import pytest

from umbra.errors import PreconditionError
from umbra.numbers import stirling_first, stirling_second
from umbra.operators import DELTA_NAMES, DeltaOperator, Polynomial, catalog
from umbra.sequences import (
    BinomialSequence,
    ConnectionMatrix,
    connection_constants,
    conjugate_sequence,
    generate_recurrence,
    generate_transfer,
    ramey_sequence,
    taylor_expand,
    umbral_compose,
    verify_binomial_identity,
)
from umbra.series import compose, compositional_inverse


def delta_catalog(order=16):
    for name in DELTA_NAMES:
        params = {"b": Rat(1, 2)} if name == "abel" else {}
        yield name, catalog(name, params, order=order)


def poly_product(factors):
    p = Polynomial([1])
    for f in factors:
        p = p * f
    return p


def abel_poly(n, b):
    # [PAPER] closed form x (x - nb)^(n-1)
    if n == 0:
        return Polynomial([1])
    return Polynomial([0, 1]) * poly_product(
        [Polynomial([-n * b, 1])] * (n - 1)
    )


def lower_factorial(n):
    return poly_product([Polynomial([-i, 1]) for i in range(n)]) if n else Polynomial([1])


def upper_factorial(n):
    return Polynomial([0, 1]) * poly_product(
        [Polynomial([i, 1]) for i in range(1, n)]
    ) if n else Polynomial([1])


class TestGenerators:
    def test_derivative_gives_powers(self):
        seq = generate_transfer(catalog("derivative"), 6)
        for n in range(7):
            assert seq[n] == Polynomial.x_power(n)

    def test_lower_factorial_rows(self):
        # [DERIVED] (x)_3 = x^3 - 3x^2 + 2x; coefficients are Stirling
        # numbers of the first kind.
        seq = generate_transfer(catalog("forward_difference", order=16), 8)
        assert seq[3] == Polynomial([0, 2, -3, 1])
        for n in range(9):
            assert seq[n] == lower_factorial(n), n
            for k in range(n + 1):
                assert seq[n].coefficient(k) == stirling_first(n, k)

    def test_upper_factorial(self):
        # [DERIVED] basic sequence of the backward difference is
        # x(x+1)...(x+n-1)
        seq = generate_transfer(catalog("backward_difference", order=16), 8)
        for n in range(9):
            assert seq[n] == upper_factorial(n), n

    def test_abel_closed_form(self):
        # [PAPER] A_n(x; b) = x (x - nb)^(n-1)
        for b in (Rat(2), Rat(-1), Rat(1, 2)):
            seq = generate_transfer(catalog("abel", {"b": b}, order=16), 7)
            for n in range(8):
                assert seq[n] == abel_poly(n, b), (b, n)

    def test_laguerre_row(self):
        # [PAPER] L_3 = -x^3 + 6x^2 - 6x
        seq = generate_transfer(catalog("laguerre", order=16), 5)
        assert seq[3] == Polynomial([0, -6, 6, -1])

    def test_transfer_equals_recurrence(self):
        # two independent generation formulas must agree
        for name, op in delta_catalog():
            a = generate_transfer(op, 8)
            b = generate_recurrence(op, 8)
            for n in range(9):
                assert a[n] == b[n], (name, n)

    def test_defining_property(self):
        # f p_n = n p_{n-1}, p_0 = 1, p_n(0) = 0
        for name, op in delta_catalog():
            seq = generate_transfer(op, 8)
            assert seq[0] == Polynomial([1])
            for n in range(1, 9):
                assert seq[n].evaluate(0) == 0, (name, n)
                assert op(seq[n]) == seq[n - 1].scale(n), (name, n)

    def test_degree_and_lazy_growth(self):
        seq = generate_transfer(catalog("forward_difference", order=16), 2)
        # indexing past the eager bound extends the cache
        assert seq[9].degree == 9

    def test_window_exhaustion_raises(self):
        seq = generate_transfer(catalog("forward_difference", order=5), 2)
        with pytest.raises(PreconditionError, match="truncation too small"):
            seq[6]


class TestBinomialIdentity:
    def test_certifies_catalog_sequences(self):
        for name, op in delta_catalog():
            seq = generate_transfer(op, 7)
            ok, witness = verify_binomial_identity(seq, 7)
            assert ok, (name, witness)

    def test_detects_corruption(self):
        # a constant slipped into p_2 breaks the identity and produces a
        # concrete witness
        good = generate_transfer(catalog("forward_difference", order=16), 4)

        def step(n, _polys):
            p = good[n]
            return p + Polynomial([1]) if n == 2 else p

        bad = BinomialSequence(good.operator, "corrupted", step)
        ok, witness = verify_binomial_identity(bad, 3)
        assert not ok
        assert witness["lhs"] != witness["rhs"]


class TestConjugate:
    def test_conjugate_of_mercator_is_lower_factorial(self):
        # the conjugate sequence of g is basic for g^(-1); with
        # g = log(1+t) that inverse is e^t - 1
        fd = catalog("forward_difference", order=16)
        g = compositional_inverse(fd.series)
        conj = conjugate_sequence(g, 7)
        direct = generate_transfer(fd, 7)
        for n in range(8):
            assert conj[n] == direct[n], n

    def test_coefficient_formula(self):
        # [DERIVED] c_{nk} = n! [t^n] g^k / k! checked against an
        # independently computed power
        from umbra.series import int_pow

        ab = catalog("abel", {"b": 1}, order=16)
        conj = conjugate_sequence(ab.series, 6)
        g3 = int_pow(ab.series, 3)
        n = 5
        assert conj[n].coefficient(3) == factorial(n) * g3.coefficient(n) / factorial(3)

    def test_conjugate_is_binomial_type(self):
        ab = catalog("abel", {"b": -2}, order=16)
        conj = conjugate_sequence(ab.series, 6)
        ok, witness = verify_binomial_identity(conj, 6)
        assert ok, witness


class TestTaylor:
    def test_powers_in_lower_factorials(self):
        # [DERIVED] x^n = sum_k S(n,k) (x)_k
        fd = catalog("forward_difference", order=16)
        for n in range(9):
            d = taylor_expand(Polynomial.x_power(n), fd)
            assert d == [stirling_second(n, k) for k in range(n + 1)], n

    def test_basic_sequence_is_dual(self):
        # expanding p_n of Q in the basis of Q gives the indicator
        fd = catalog("forward_difference", order=16)
        seq = generate_transfer(fd, 6)
        for n in range(7):
            d = taylor_expand(seq[n], fd)
            assert d == [Rat(int(k == n)) for k in range(n + 1)], n

    def test_reconstruction(self):
        fd = catalog("forward_difference", order=16)
        seq = generate_transfer(fd, 8)
        p = Polynomial([3, 0, -2, 0, Rat(1, 7), 1])
        d = taylor_expand(p, fd)
        acc = Polynomial()
        for k, c in enumerate(d):
            acc = acc + seq[k].scale(c)
        assert acc == p

    def test_ordinary_taylor(self):
        d = catalog("derivative")
        p = Polynomial([5, -1, Rat(2, 3)])
        assert taylor_expand(p, d) == [Rat(5), Rat(-1), Rat(2, 3)]


def lah(n, k):
    # [DERIVED] Lah numbers C(n-1, k-1) n!/k! connect the factorial bases
    if n == k == 0:
        return Rat(1)
    if k == 0 or k > n:
        return Rat(0)
    return Rat(comb(n - 1, k - 1) * factorial(n), factorial(k))


class TestConnectionConstants:
    def test_upper_in_lower_is_lah(self):
        fd = catalog("forward_difference", order=16)
        bd = catalog("backward_difference", order=16)
        c = connection_constants(fd, bd, 8)
        for n in range(9):
            for k in range(n + 1):
                assert c.entry(n, k) == lah(n, k), (n, k)

    def test_lower_in_upper_is_signed_lah(self):
        fd = catalog("forward_difference", order=16)
        bd = catalog("backward_difference", order=16)
        c = connection_constants(bd, fd, 8)
        for n in range(9):
            for k in range(n + 1):
                assert c.entry(n, k) == (-1) ** (n - k) * lah(n, k), (n, k)

    def test_semantics(self):
        # target_n = sum_k c_{nk} source_k for an asymmetric pair
        g = catalog("abel", {"b": 1}, order=16)
        h = catalog("forward_difference", order=16)
        c = connection_constants(g, h, 6)
        src = generate_transfer(g, 6)
        tgt = generate_transfer(h, 6)
        for n in range(7):
            acc = Polynomial()
            for k in range(n + 1):
                acc = acc + src[k].scale(c.entry(n, k))
            assert acc == tgt[n], n

    def test_triangular_with_unit_diagonal_scale(self):
        g = catalog("laguerre", order=16)
        h = catalog("forward_difference", order=16)
        c = connection_constants(g, h, 6)
        for n in range(7):
            assert len(c.row(n)) == n + 1
            assert c.entry(n, n) != 0

    def test_powers_to_lower_factorial_is_stirling(self):
        # [DERIVED] connection from x^k to (x)_n recovers Stirling numbers
        d = catalog("derivative")
        fd = catalog("forward_difference", order=16)
        c = connection_constants(d, fd, 7)
        for n in range(8):
            for k in range(n + 1):
                assert c.entry(n, k) == stirling_first(n, k), (n, k)

    def test_identity_connection(self):
        fd = catalog("forward_difference", order=16)
        c = connection_constants(fd, fd, 5)
        for n in range(6):
            for k in range(n + 1):
                assert c.entry(n, k) == (1 if n == k else 0)


class TestUmbralCompose:
    def test_rows_and_matrix_inputs_agree(self):
        fd = catalog("forward_difference", order=16)
        bd = catalog("backward_difference", order=16)
        c = connection_constants(bd, fd, 5)
        upper = generate_transfer(bd, 5)
        via_matrix = umbral_compose(c, upper)
        via_rows = umbral_compose([list(c.row(n)) for n in range(6)], upper)
        lower = generate_transfer(fd, 5)
        for n in range(6):
            assert via_matrix[n] == lower[n]
            assert via_rows[n] == lower[n]

    def test_sequence_input_composes_operators(self):
        # r = q(p) is basic for f(g(D)) when q is basic for f, p for g
        fd = catalog("forward_difference", order=16)
        q = generate_transfer(fd, 6)
        p = generate_transfer(fd, 6)
        r = umbral_compose(q, p)
        composed = DeltaOperator(compose(fd.series, fd.series))
        direct = generate_transfer(composed, 6)
        for n in range(7):
            assert r[n] == direct[n], n
        assert r.operator is not None
        assert r.operator.series.agrees_with(composed.series)

    def test_powers_are_identity_element(self):
        # substituting x^k leaves any sequence unchanged
        ab = catalog("abel", {"b": 3}, order=16)
        seq = generate_transfer(ab, 5)
        powers = generate_transfer(catalog("derivative"), 5)
        r = umbral_compose(seq, powers)
        for n in range(6):
            assert r[n] == seq[n]


class TestRamey:
    def test_shift_of_forward_difference_is_upper_factorial(self):
        # [DERIVED] E^(-1)(E - 1) = 1 - E^(-1), whose basic sequence is
        # the upper factorial
        fd = catalog("forward_difference", order=16)
        seq = ramey_sequence(fd, -1, 6)
        for n in range(7):
            assert seq[n] == upper_factorial(n), n

    def test_gould_closed_form(self):
        # [DERIVED] basic sequence of E^b (E-1): G_n = x (x - bn - 1)_{n-1}
        b = Rat(2)
        fd = catalog("forward_difference", order=16)
        seq = ramey_sequence(fd, b, 6)
        for n in range(1, 7):
            closed = Polynomial([0, 1]) * poly_product(
                [Polynomial([-b * n - 1 - i, 1]) for i in range(n - 1)]
            )
            assert seq[n] == closed, n

    def test_zero_shift_is_identity(self):
        ab = catalog("abel", {"b": 1}, order=16)
        seq = ramey_sequence(ab, 0, 5)
        direct = generate_transfer(ab, 5)
        for n in range(6):
            assert seq[n] == direct[n]

    def test_is_binomial_type(self):
        fd = catalog("forward_difference", order=16)
        seq = ramey_sequence(fd, Rat(1, 2), 6)
        ok, witness = verify_binomial_identity(seq, 6)
        assert ok, witness
