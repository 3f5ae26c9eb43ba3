"""Harmonic logarithms and the logarithmic extension of binomial sequences.

The harmonic logarithms of order t are the functions spanned, for integer
degree n, by x^n (log x)^j. They extend the monomials (order 0, degrees
n >= 0) to a basis on which every Laurent series in D acts: the derivative
maps the degree-n element to roman(n) times the degree n-1 element, with
no degree ever annihilated (for t >= 1), so negative powers of D act as
well.

A HarmonicLogSeries is a window of exactly known coefficients over this
basis: everything above the top stored degree is known to be zero, the
window [floor, top] is exact, and nothing is claimed below the floor. A
floor of -infinity means the series is exact. Operators move both ends of
the window:

    top'   = top - valuation(T)
    floor' = max(floor - valuation(T), top - order(T) + 1)

Delta operators have logarithmic basic sequences extending their classical
ones to all integer degrees: the residual series at degree -1 and its
companions are produced by the same transfer formula used for polynomials.
"""
from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction as Rat
from functools import cache
from typing import Mapping, Optional

from .errors import PreconditionError
from .numbers import roman_factorial, stirling_first
from .operators import DeltaOperator, ShiftInvariantOperator
from .series import (
    INF,
    TruncatedSeries,
    constant,
    exp_series,
    formal_derivative,
    from_coeffs,
    int_pow,
    monomial,
    mul,
    reciprocal,
)

NEG_INF = float("-inf")


def _series_of(T) -> TruncatedSeries:
    if isinstance(T, ShiftInvariantOperator):
        return T.series
    if isinstance(T, TruncatedSeries):
        return T
    raise TypeError(f"expected an operator or series, got {T!r}")


class HarmonicLogSeries:
    """A window of harmonic-logarithm coefficients of a fixed order t.

    coeffs maps degree -> nonzero rational coefficient. Degrees above the
    top stored degree are known zero; degrees below ``floor`` are unknown.
    """

    __slots__ = ("order_t", "coeffs", "floor")

    def __init__(self, coeffs: Mapping[int, Rat] = (), floor=NEG_INF, order_t: int = 1):
        if not (isinstance(order_t, int) and order_t >= 0):
            raise PreconditionError("order t must be a nonnegative integer")
        if not (floor == NEG_INF or isinstance(floor, int)):
            raise PreconditionError("floor must be an integer or -infinity")
        clean = {}
        for d, c in dict(coeffs).items():
            if d < floor:
                continue
            if order_t == 0 and d < 0:
                # harmonic logarithms of order zero vanish in negative degree
                continue
            c = Rat(c)
            if c != 0:
                clean[int(d)] = c
        if order_t == 0 and floor <= 0:
            # everything below degree zero is known zero at order zero
            floor = NEG_INF
        self.order_t = order_t
        self.coeffs = clean
        self.floor = floor

    # -- structure queries ------------------------------------------------

    @property
    def top(self):
        """Highest known nonzero degree; floor - 1 for an empty window."""
        if self.coeffs:
            return max(self.coeffs)
        return self.floor - 1 if self.floor != NEG_INF else NEG_INF

    @property
    def is_exact(self) -> bool:
        return self.floor == NEG_INF

    @property
    def is_empty(self) -> bool:
        return not self.coeffs

    def coefficient(self, d: int) -> Rat:
        if self.floor != NEG_INF and d < self.floor:
            raise PreconditionError("coefficient below window floor")
        return self.coeffs.get(d, Rat(0))

    def truncate_floor(self, new_floor: int) -> "HarmonicLogSeries":
        """Forget coefficients below new_floor (floors can only rise)."""
        if new_floor != NEG_INF and self.floor != NEG_INF and new_floor < self.floor:
            raise PreconditionError("truncation too small for exact action")
        return HarmonicLogSeries(
            {d: c for d, c in self.coeffs.items() if d >= new_floor},
            new_floor,
            self.order_t,
        )

    # -- linear structure -------------------------------------------------

    def __add__(self, other: "HarmonicLogSeries") -> "HarmonicLogSeries":
        if not isinstance(other, HarmonicLogSeries):
            return NotImplemented
        if self.order_t != other.order_t:
            raise PreconditionError("cannot add series of different orders")
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, Rat(0)) + c
        return HarmonicLogSeries(out, max(self.floor, other.floor), self.order_t)

    def __neg__(self):
        return HarmonicLogSeries(
            {d: -c for d, c in self.coeffs.items()}, self.floor, self.order_t
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HarmonicLogSeries":
        c = Rat(c)
        if c == 0:
            return HarmonicLogSeries({}, NEG_INF, self.order_t)
        return HarmonicLogSeries(
            {d: c * v for d, v in self.coeffs.items()}, self.floor, self.order_t
        )

    def __eq__(self, other):
        if not isinstance(other, HarmonicLogSeries):
            return NotImplemented
        return (
            self.order_t == other.order_t
            and self.floor == other.floor
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order_t, self.floor, frozenset(self.coeffs.items())))

    def agrees_with(self, other: "HarmonicLogSeries") -> bool:
        """Coefficient equality on the overlap of the known windows."""
        if self.order_t != other.order_t:
            return False
        lo = max(self.floor, other.floor)
        hi = max(
            self.top if self.coeffs else lo,
            other.top if other.coeffs else lo,
        )
        if lo == NEG_INF:
            lo = min(
                min(self.coeffs, default=0), min(other.coeffs, default=0)
            )
        d = lo
        while d <= hi:
            if self.coeffs.get(d, Rat(0)) != other.coeffs.get(d, Rat(0)):
                return False
            d += 1
        return True

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for d in sorted(self.coeffs, reverse=True):
                parts.append(f"{self.coeffs[d]}*L[{d}]")
            body = " + ".join(parts)
        tail = "" if self.floor == NEG_INF else f" (floor {self.floor})"
        return f"<order-{self.order_t} log series: {body}{tail}>"


# -- basis elements ------------------------------------------------------


def harmonic_log(n: int, t: int = 1) -> HarmonicLogSeries:
    """The single basis element of degree n and order t (exact)."""
    return HarmonicLogSeries({n: Rat(1)}, NEG_INF, t)


@cache
def monomial_expansion(n: int, t: int):
    """The degree-n order-t harmonic logarithm as a polynomial in log x:

        lambda_n^(t) = x^n sum_i m_i (log x)^i

    returned as the mapping {i: m_i}. Derived from the closed form with
    falling factorials of t and Stirling numbers of degree -n."""
    out = {}
    falling = Rat(1)
    for k in range(t + 1):
        coeff = roman_factorial(n) * falling * stirling_first(-n, k, order=t + 2)
        if coeff != 0:
            out[t - k] = coeff
        falling *= t - k
    return out


# -- operator action -----------------------------------------------------


def apply_operator(T, s: HarmonicLogSeries) -> HarmonicLogSeries:
    """Apply a (possibly Laurent) series in D to a harmonic-log window.

    Each D^k sends degree j to roman(j)!/roman(j-k)! times degree j-k; no
    term is annihilated for order t >= 1, so negative k acts as well. The
    result window is

        top' = top - val(T),  floor' = max(floor - val(T), top - order(T) + 1).
    """
    ts = _series_of(T)
    out = {}
    for j, c in s.coeffs.items():
        rj = roman_factorial(j)
        for k, a in ts.coeffs.items():
            d = j - k
            out[d] = out.get(d, Rat(0)) + c * a * rj / roman_factorial(d)
    if ts.is_zero and ts.order == INF:
        return HarmonicLogSeries({}, NEG_INF, s.order_t)
    top = s.top
    floor_from_tail = (
        NEG_INF if (ts.order == INF or top == NEG_INF) else top - ts.order + 1
    )
    floor_from_floor = NEG_INF if s.floor == NEG_INF else s.floor - ts.valuation
    new_floor = max(floor_from_floor, floor_from_tail)
    if new_floor != NEG_INF:
        new_floor = int(new_floor)
    return HarmonicLogSeries(out, new_floor, s.order_t)


def roman_shift(s: HarmonicLogSeries) -> HarmonicLogSeries:
    """The shift degree n -> n+1 that annihilates degree -1 (the map
    sigma); together with D it satisfies the commutation rule
    [D, sigma] = identity on every order t >= 1."""
    out = {}
    for j, c in s.coeffs.items():
        if j != -1:
            out[j + 1] = c
    if s.floor == NEG_INF:
        floor = NEG_INF
    elif s.floor == 0:
        # degree 0 of the image comes only from degree -1, which is
        # annihilated, so it is known zero even though -1 is below floor
        floor = 0
    else:
        floor = s.floor + 1
    return HarmonicLogSeries(out, floor, s.order_t)


def augmentation(s: HarmonicLogSeries, t: Optional[int] = None) -> Rat:
    """The degree-zero coefficient functional of order t. Series of a
    different order have augmentation zero; asking for the coefficient of
    an unknown degree raises."""
    if t is None:
        t = s.order_t
    if t != s.order_t:
        return Rat(0)
    if s.floor != NEG_INF and s.floor > 0:
        raise PreconditionError("augmentation outside window")
    return s.coeffs.get(0, Rat(0))


def skip(s: HarmonicLogSeries, to_t: int) -> HarmonicLogSeries:
    """Relabel the window to another order with identical coefficients
    (the degree-preserving isomorphism between log orders; moving to order
    zero forgets the negative-degree tail)."""
    return HarmonicLogSeries(s.coeffs, s.floor, to_t)


# -- logarithmic basic sequences ------------------------------------------


def _delta_series(f) -> TruncatedSeries:
    fs = _series_of(f)
    if fs.is_zero or fs.valuation != 1:
        raise PreconditionError("not a delta series")
    return fs


def log_sequence(f, n: int, depth: int = 12) -> HarmonicLogSeries:
    """Degree-n term of the logarithmic basic sequence of f, as a window
    of ``depth`` coefficients [n-depth+1, n] over the order-1 basis.

    Uses the transfer formula p_n = f'(D) (f/D)^(-n-1) lambda_n, valid for
    every integer n; the classical polynomials reappear for n >= 0."""
    fs = _delta_series(f)
    fprime = formal_derivative(fs)
    g = mul(fs, monomial(-1))
    transfer = mul(fprime, int_pow(g, -n - 1))
    s = apply_operator(transfer, harmonic_log(n, 1))
    target = n - depth + 1
    if s.floor != NEG_INF and s.floor > target:
        raise PreconditionError("truncation too small for exact action")
    return s.truncate_floor(target)


def residual_term(f, depth: int = 12) -> HarmonicLogSeries:
    """The degree -1 term of the logarithmic basic sequence: the image of
    1/x under f'(D). Its augmentation-like residues drive the Newton
    expansions of Laurent tails."""
    return log_sequence(f, -1, depth)


class LogBinomialSequence:
    """Lazily computed logarithmic basic sequence of a delta operator,
    indexed by any integer degree."""

    __slots__ = ("operator", "depth", "_terms")

    def __init__(self, operator: DeltaOperator, depth: int = 12):
        _delta_series(operator)
        self.operator = operator
        self.depth = depth
        self._terms = {}

    def __getitem__(self, n: int) -> HarmonicLogSeries:
        if n not in self._terms:
            self._terms[n] = log_sequence(self.operator, n, self.depth)
        return self._terms[n]

    term = __getitem__

    @property
    def residual(self) -> HarmonicLogSeries:
        return self[-1]

    def __repr__(self):
        op = getattr(self.operator, "name", None) or "?"
        return f"<log basic sequence of {op}, depth {self.depth}>"


def _forward_difference_series(order: int) -> TruncatedSeries:
    return exp_series(monomial(1, 1), order=order) - constant(1)


def log_lower_factorial(n: int, depth: int = 12) -> HarmonicLogSeries:
    """Degree-n logarithmic lower factorial (x)_n^(1): the log basic
    sequence of the forward difference. For n >= 0 the result is
    cross-checked against the higher-order Bernoulli expansion of the
    transfer operator."""
    order = depth + abs(n) + 3
    fd = _forward_difference_series(order)
    result = log_sequence(fd, n, depth)
    if n >= 0:
        # (D/(e^D - 1))^(n+1) = sum_k B_{k,n+1} D^k / k!, so the transfer
        # operator factors through higher-order Bernoulli numbers; a
        # disagreement would mean an internal inconsistency.
        from .numbers import bernoulli_higher
        from math import factorial

        bern = TruncatedSeries(
            {k: Rat(bernoulli_higher(k, n + 1), factorial(k)) for k in range(order - 1)},
            order - 1,
        )
        shift1 = exp_series(monomial(1, 1), order=order)
        alt = apply_operator(mul(shift1, bern), harmonic_log(n, 1))
        if not result.agrees_with(alt.truncate_floor(max(alt.floor, result.floor))):
            raise RuntimeError("internal cross-check failed for log lower factorial")
    return result


def log_conjugate_sequence(g, n: int, depth: int = 12) -> HarmonicLogSeries:
    """Degree-n term of the logarithmic conjugate sequence of g: the
    window sum_k c_k lambda_k^(1) with c_k = <g^k lambda_n> / roman(k)!.

    Deep windows need g known to high order: determining the coefficient
    at degree n - j requires order(g) >= n + 2j + 2 roughly."""
    gs = _delta_series(g)
    lam = harmonic_log(n, 1)
    out = {}
    for k in range(n, n - depth, -1):
        power = int_pow(gs, k) if k != 0 else constant(1)
        image = apply_operator(power, lam)
        if image.floor != NEG_INF and image.floor > 0:
            raise PreconditionError("truncation too small for exact action")
        out[k] = augmentation(image) / roman_factorial(k)
    return HarmonicLogSeries(out, n - depth + 1, 1)


def newton_expand(s: HarmonicLogSeries, depth: int = 12) -> dict:
    """Newton coefficients a_k of s over the logarithmic lower factorials:
    a_k = <FD^k s> / roman(k)!, for the ``depth`` degrees below the top of
    s. Exact for any window deep enough to determine them."""
    if s.is_empty:
        return {}
    top = s.top
    order = 2 * depth + abs(top) + 6
    fd = _forward_difference_series(order)
    out = {}
    for k in range(top, top - depth, -1):
        power = int_pow(fd, k) if k != 0 else constant(1)
        image = apply_operator(power, s)
        if image.floor != NEG_INF and image.floor > 0:
            raise PreconditionError("truncation too small for exact action")
        out[k] = augmentation(image) / roman_factorial(k)
    return out


# -- numeric boundary ----------------------------------------------------


def evaluate_numeric(s: HarmonicLogSeries, x0, precision: int = 28) -> Decimal:
    """Evaluate the known window at a positive rational point using
    decimal arithmetic with the requested number of digits."""
    x0 = Rat(x0)
    if x0 <= 0:
        raise PreconditionError("evaluate_numeric requires x0 > 0")
    with localcontext() as ctx:
        ctx.prec = precision + 10
        xv = Decimal(x0.numerator) / Decimal(x0.denominator)
        lv = xv.ln()
        total = Decimal(0)
        for d, c in sorted(s.coeffs.items()):
            base = _dec(c) * xv**d
            for i, m in monomial_expansion(d, s.order_t).items():
                total += base * _dec(m) * lv**i
        ctx.prec = precision
        return +total


def tail_bound(s: HarmonicLogSeries, x0, precision: int = 28) -> Optional[Decimal]:
    """Estimate of the unknown tail below the window floor at x0, assuming
    the coefficients continue at the growth rate seen inside the window
    (geometric-type continuation). Returns None when no safe estimate is
    available (growth rate at or above x0), and 0 for exact series."""
    x0 = Rat(x0)
    if x0 <= 0:
        raise PreconditionError("tail_bound requires x0 > 0")
    if s.is_exact:
        return Decimal(0)
    if s.is_empty:
        return None
    degrees = sorted(s.coeffs)
    ratios = [
        abs(s.coeffs[d]) / abs(s.coeffs[d + 1])
        for d in degrees
        if d + 1 in s.coeffs
    ]
    if not ratios:
        return None
    rho = max(ratios)
    if rho >= x0:
        return None
    anchor = abs(s.coeffs.get(s.floor, Rat(0))) or max(abs(c) for c in s.coeffs.values())
    with localcontext() as ctx:
        ctx.prec = precision + 10
        xv = Decimal(x0.numerator) / Decimal(x0.denominator)
        q = _dec(rho) / xv
        head = _dec(anchor) * xv ** int(s.floor)
        bound = head * q / (1 - q)
        if s.order_t >= 1 and s.floor > 0:
            # tail terms may still carry log factors
            lv = abs(xv.ln())
            bound *= max(Decimal(1), lv) ** s.order_t
        ctx.prec = precision
        return +bound


def _dec(q: Rat) -> Decimal:
    return Decimal(q.numerator) / Decimal(q.denominator)
