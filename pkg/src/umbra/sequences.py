"""Polynomial sequences of binomial type and their connection constants.

Every delta operator f(D) owns a unique basic sequence p_0, p_1, ... with
p_0 = 1, p_n(0) = 0 for n >= 1, and f p_n = n p_{n-1}. These sequences
satisfy the binomial identity

    p_n(x + a) = sum_k C(n, k) p_k(a) p_{n-k}(x),

which is certified here on an exact rational grid large enough to pin down
the bivariate polynomial. Two generators are provided (the transfer
formula and the Rodrigues-style recurrence), along with the conjugate
(coefficient-transform) construction, generalized Taylor expansion, umbral
composition, and connection-constant matrices between any two bases.
"""
from __future__ import annotations

from fractions import Fraction as Rat
from math import comb, factorial
from typing import Optional, Sequence

from .errors import PreconditionError
from .operators import (
    DeltaOperator,
    Polynomial,
    ShiftInvariantOperator,
    apply_to_polynomial,
)
from .series import (
    TruncatedSeries,
    compose,
    compositional_inverse,
    exp_series,
    formal_derivative,
    int_pow,
    monomial,
    mul,
    reciprocal,
)


class BinomialSequence:
    """Lazily grown basic sequence of a delta operator.

    Indexing returns the degree-n Polynomial; the cache extends on demand,
    bounded only by the operator's truncation window (a PreconditionError
    is raised when a term would need unknown series coefficients).
    """

    __slots__ = ("operator", "generation_method", "_polys", "_step")

    def __init__(self, operator, generation_method, step, initial=None):
        self.operator = operator
        self.generation_method = generation_method
        self._polys = list(initial or [])
        self._step = step

    def __getitem__(self, n: int) -> Polynomial:
        if n < 0:
            raise PreconditionError("binomial sequences are indexed by n >= 0")
        while len(self._polys) <= n:
            self._polys.append(self._step(len(self._polys), self._polys))
        return self._polys[n]

    def terms(self, n_max: int) -> list:
        return [self[n] for n in range(n_max + 1)]

    def __repr__(self):
        label = self.generation_method
        op = getattr(self.operator, "name", None) or "?"
        return f"<basic sequence of {op} via {label}, {len(self._polys)} cached>"


def generate_transfer(f: DeltaOperator, n_max: int = 0) -> BinomialSequence:
    """Basic sequence by the transfer formula p_n = f'(D) (f/D)^(-n-1) x^n.

    Terms beyond n_max are still available by indexing; n_max only controls
    how much is precomputed eagerly.
    """
    fs = f.series
    if fs.is_zero or fs.valuation != 1:
        raise PreconditionError("not a delta series")
    fprime = formal_derivative(fs)
    ginv = reciprocal(mul(fs, monomial(-1)))  # (f/D)^(-1)
    state = {}

    def step(n, _polys):
        if n == 0:
            return Polynomial([1])
        power = state.get("power")
        # maintain (f/D)^(-n-1) incrementally
        if power is None or state["n"] != n - 1:
            power = int_pow(ginv, n + 1)
        else:
            power = power * ginv
        state["power"] = power
        state["n"] = n
        transfer = fprime * power
        return apply_to_polynomial(transfer, Polynomial.x_power(n))

    seq = BinomialSequence(f, "transfer", step)
    seq.terms(n_max)
    return seq


def generate_recurrence(f: DeltaOperator, n_max: int = 0) -> BinomialSequence:
    """Basic sequence by the recurrence p_n = x (f'(D))^(-1) p_{n-1}."""
    fs = f.series
    if fs.is_zero or fs.valuation != 1:
        raise PreconditionError("not a delta series")
    inv_fprime = reciprocal(formal_derivative(fs))

    def step(n, polys):
        if n == 0:
            return Polynomial([1])
        return apply_to_polynomial(inv_fprime, polys[n - 1]).mul_x()

    seq = BinomialSequence(f, "recurrence", step)
    seq.terms(n_max)
    return seq


def conjugate_sequence(g, n_max: int = 0) -> BinomialSequence:
    """Conjugate sequence of a delta series g: the polynomials

        p_n(x) = sum_k (n! [t^n] g(t)^k / k!) x^k,

    which form the basic sequence of the compositional inverse of g."""
    gs = g.series if isinstance(g, ShiftInvariantOperator) else g
    if gs.is_zero or gs.valuation != 1:
        raise PreconditionError("not a delta series")
    powers = [None]  # g^0 handled separately

    def step(n, _polys):
        if n == 0:
            return Polynomial([1])
        while len(powers) <= n:
            prev = powers[-1]
            powers.append(gs if prev is None else prev * gs)
        coeffs = [Rat(0)]
        for k in range(1, n + 1):
            gk = powers[k]
            if gk.order <= n:
                raise PreconditionError("truncation too small for exact action")
            coeffs.append(factorial(n) * gk.coefficient(n) / factorial(k))
        return Polynomial(coeffs)

    operator = None
    try:
        operator = DeltaOperator(compositional_inverse(gs), name="conjugate")
    except PreconditionError:
        pass
    seq = BinomialSequence(operator, "conjugate", step)
    seq.terms(n_max)
    return seq


def taylor_expand(p: Polynomial, q: DeltaOperator) -> list:
    """Generalized Taylor coefficients d_k = (q^k p)(0) / k!, so that
    p = sum_k d_k q_k with q_k the basic sequence of q."""
    qs = q.series if isinstance(q, ShiftInvariantOperator) else q
    if qs.is_zero or qs.valuation != 1:
        raise PreconditionError("not a delta series")
    if p.is_zero:
        return [Rat(0)]
    out = []
    cur = p
    for k in range(p.degree + 1):
        out.append(cur.evaluate(0) / factorial(k))
        cur = apply_to_polynomial(q, cur)
    return out


class ConnectionMatrix:
    """Lower-triangular constants c_{nk} expressing one basic sequence in
    another: target_n(x) = sum_k c_{nk} source_k(x)."""

    __slots__ = ("entries", "source", "target")

    def __init__(self, entries: Sequence[Sequence[Rat]], source="source", target="target"):
        self.entries = tuple(tuple(Rat(c) for c in row) for row in entries)
        self.source = source
        self.target = target

    def entry(self, n: int, k: int) -> Rat:
        row = self.entries[n]
        return row[k] if 0 <= k < len(row) else Rat(0)

    def row(self, n: int):
        return self.entries[n]

    @property
    def size(self):
        return len(self.entries)

    def __repr__(self):
        return (
            f"<connection constants: {self.target} in terms of {self.source}, "
            f"{self.size} rows>"
        )


def connection_constants(g: DeltaOperator, h: DeltaOperator, n_max: int) -> ConnectionMatrix:
    """Constants c_{nk} with h-basic_n = sum_k c_{nk} g-basic_k.

    They are the coefficients of the basic sequence of h(g^(-1)(D)): the
    umbral map sending the g-sequence to the h-sequence is polynomial
    substitution into that sequence."""
    comp = compose(h.series, compositional_inverse(g.series))
    bridge = generate_transfer(DeltaOperator(comp), n_max)
    entries = [
        [bridge[n].coefficient(k) for k in range(n + 1)] for n in range(n_max + 1)
    ]
    return ConnectionMatrix(
        entries,
        source=getattr(g, "name", None) or "g",
        target=getattr(h, "name", None) or "h",
    )


def umbral_compose(q, p: BinomialSequence) -> BinomialSequence:
    """Umbral composition r_n = q_n(p): substitute the sequence p into the
    coefficient rows of q. When q is the basic sequence of f and p the
    basic sequence of g, the result is the basic sequence of f(g(D)).

    q may be a BinomialSequence, a ConnectionMatrix, or bare coefficient
    rows."""
    if isinstance(q, BinomialSequence):
        rows = None
        q_seq = q
    elif isinstance(q, ConnectionMatrix):
        rows = q.entries
        q_seq = None
    else:
        rows = tuple(tuple(Rat(c) for c in row) for row in q)
        q_seq = None

    def row_of(n):
        if q_seq is not None:
            poly = q_seq[n]
            return [poly.coefficient(k) for k in range(n + 1)]
        if n >= len(rows):
            raise PreconditionError("umbral composition beyond supplied rows")
        return rows[n]

    def step(n, _polys):
        acc = Polynomial()
        for k, c in enumerate(row_of(n)):
            if c != 0:
                acc = acc + p[k].scale(c)
        return acc

    operator = None
    if q_seq is not None and q_seq.operator is not None and p.operator is not None:
        operator = DeltaOperator(
            compose(q_seq.operator.series, p.operator.series), name="umbral"
        )
    return BinomialSequence(operator, "umbral", step)


def ramey_sequence(f: DeltaOperator, b, n_max: int = 0) -> BinomialSequence:
    """Basic sequence of the shifted operator E^b f(D); for the forward
    difference this produces the Gould polynomials."""
    fs = f.series
    b = Rat(b)
    order = fs.order if fs.order != float("inf") else n_max + 4
    shifted = mul(exp_series(monomial(1, b), order=order), fs)
    op = DeltaOperator(
        shifted, name="ramey", parameters={"b": b, "base": getattr(f, "name", None)}
    )
    return generate_transfer(op, n_max)


def verify_binomial_identity(s: BinomialSequence, n: int):
    """Certify p_n(x+a) = sum_k C(n,k) p_k(a) p_{n-k}(x) on an exact
    (n+1) x (n+1) rational grid, which pins down the bivariate polynomial
    identity. Returns (True, None) or (False, witness dict)."""
    polys = s.terms(n)
    for xi in range(n + 1):
        for aj in range(n + 1):
            x = Rat(xi)
            a = Rat(aj)
            lhs = polys[n].evaluate(x + a)
            rhs = sum(
                comb(n, k) * polys[k].evaluate(a) * polys[n - k].evaluate(x)
                for k in range(n + 1)
            )
            if lhs != rhs:
                return False, {"n": n, "x": x, "a": a, "lhs": lhs, "rhs": rhs}
    return True, None
