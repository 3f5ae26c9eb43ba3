"""Truncated Laurent series over the rationals in one indeterminate t.

A series here is a finite window of exactly known coefficients: everything
below the valuation is known to be zero, coefficients from the valuation up
to (but excluding) ``order`` are stored exactly as Fractions, and nothing is
claimed about exponents at or beyond ``order``. An ``order`` of infinity
means the series is known exactly at every exponent (a Laurent polynomial).

Every arithmetic operation tracks how far the result is actually determined
by the known windows of its inputs, so a coefficient is never reported
unless it is provably exact:

  add       order = min(order_f, order_g)
  mul       order = min(order_f + val_g, order_g + val_f)
  recip     order = order_f - 2 * val_f
  compose   order = min(ring-derived order, order_g, order_f * val_g)

The zero series is represented with an empty coefficient table and
valuation equal to its order.
"""
from __future__ import annotations

from fractions import Fraction as Rat
from typing import Mapping

from .errors import PreconditionError

INF = float("inf")


def _check_order(order):
    if order == INF or order == -INF:
        return order
    if isinstance(order, int):
        return order
    if isinstance(order, float) and order.is_integer():
        return int(order)
    raise PreconditionError("order must be an integer or infinity")


def _mul_order(a, b):
    """a*b for order arithmetic, tolerating infinities."""
    if a == INF or b == INF:
        sign = (1 if a > 0 else -1 if a < 0 else 0) * (
            1 if b > 0 else -1 if b < 0 else 0
        )
        return INF * sign if sign else 0
    return a * b


class TruncatedSeries:
    """A Laurent series known exactly on the window [valuation, order)."""

    __slots__ = ("coeffs", "order", "valuation")

    def __init__(self, coeffs: Mapping[int, Rat] = (), order=INF):
        order = _check_order(order)
        clean = {}
        for e, c in dict(coeffs).items():
            if e >= order:
                continue
            c = Rat(c)
            if c != 0:
                clean[int(e)] = c
        self.coeffs = clean
        self.order = order
        self.valuation = min(clean) if clean else order

    # -- basic queries ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """True when every known coefficient is zero."""
        return not self.coeffs

    def coefficient(self, e: int) -> Rat:
        """Exact coefficient of t^e. Raises if e lies beyond the window."""
        if e >= self.order:
            raise PreconditionError("coefficient beyond truncation order")
        return self.coeffs.get(e, Rat(0))

    def degree_range(self):
        """(valuation, order) of the known window."""
        return (self.valuation, self.order)

    def truncate(self, order) -> "TruncatedSeries":
        """Forget coefficients at or beyond the given order."""
        order = _check_order(order)
        if order >= self.order:
            return self
        return TruncatedSeries(self.coeffs, order)

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Rat(0)) + c
        return TruncatedSeries(out, order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries({e: -c for e, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rat)):
            return self.scale(other)
        other = _coerce(other)
        order = min(self.order + other.valuation, other.order + self.valuation)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e < order:
                    out[e] = out.get(e, Rat(0)) + c1 * c2
        return TruncatedSeries(out, order)

    __rmul__ = __mul__

    def scale(self, c) -> "TruncatedSeries":
        c = Rat(c)
        if c == 0:
            # Scaling by zero yields an exact zero: no unknown tail survives.
            return TruncatedSeries({}, INF)
        return TruncatedSeries({e: c * v for e, v in self.coeffs.items()}, self.order)

    # -- comparison and display ------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs and self.order == other.order

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.order))

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Equality of coefficients on the overlap of the two known windows."""
        bound = min(self.order, other.order)
        lo = min(self.valuation, other.valuation)
        if lo >= bound:
            return True
        return all(
            self.coeffs.get(e, Rat(0)) == other.coeffs.get(e, Rat(0))
            for e in range(int(lo), int(bound))
        )

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for e in sorted(self.coeffs):
                c = self.coeffs[e]
                if e == 0:
                    parts.append(str(c))
                elif e == 1:
                    parts.append(f"{c}*t")
                else:
                    parts.append(f"{c}*t^{e}")
            body = " + ".join(parts)
        tail = "" if self.order == INF else f" + O(t^{self.order})"
        return f"<{body}{tail}>"


def _coerce(x) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    if isinstance(x, (int, Rat)):
        return constant(x)
    raise TypeError(f"cannot interpret {x!r} as a series")


# -- constructors --------------------------------------------------------


def zero(order=INF) -> TruncatedSeries:
    return TruncatedSeries({}, order)


def constant(c, order=INF) -> TruncatedSeries:
    return TruncatedSeries({0: Rat(c)}, order)


def monomial(e: int, c=1, order=INF) -> TruncatedSeries:
    return TruncatedSeries({e: Rat(c)}, order)


def identity(order=INF) -> TruncatedSeries:
    """The series t itself."""
    return monomial(1, 1, order)


def from_coeffs(values, start: int = 0, order=None) -> TruncatedSeries:
    """Build a series from a run of coefficients beginning at exponent
    ``start``. The order defaults to just past the last supplied value."""
    values = [Rat(v) for v in values]
    if order is None:
        order = start + len(values)
    return TruncatedSeries({start + i: v for i, v in enumerate(values)}, order)


# -- module-level operations ---------------------------------------------


def add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def reciprocal(f: TruncatedSeries, order=None) -> TruncatedSeries:
    """Multiplicative inverse 1/f.

    For a truncated input the result is determined on a window of
    order_f - 2*val_f: perturbing f at its order shifts the inverse at
    order_f - 2*val_f. Exact inputs need an explicit result order unless
    they are monomials, whose inverses are again exact monomials.
    """
    if f.is_zero:
        raise PreconditionError("non-invertible: zero series")
    v = f.valuation
    if f.order == INF:
        if len(f.coeffs) == 1:
            out = monomial(-v, 1 / f.coeffs[v])
            return out.truncate(order) if order is not None else out
        if order is None:
            raise PreconditionError(
                "reciprocal of an exact series requires an explicit order"
            )
        result_order = _check_order(order)
    else:
        result_order = f.order - 2 * v
        if order is not None:
            result_order = min(result_order, _check_order(order))
    # Number of result coefficients, counting from exponent -v.
    length = result_order + v
    if length <= 0:
        return zero(result_order)
    # Invert the unit part u(t) = f(t) / (c * t^v) term by term.
    u = [f.coeffs.get(v + k, Rat(0)) for k in range(length)]
    r = [Rat(0)] * length
    r[0] = 1 / u[0]
    for k in range(1, length):
        acc = Rat(0)
        for j in range(1, k + 1):
            acc += u[j] * r[k - j]
        r[k] = -acc / u[0]
    return TruncatedSeries({-v + k: r[k] for k in range(length)}, result_order)


def int_pow(f: TruncatedSeries, n: int, order=None) -> TruncatedSeries:
    """f**n for integer n, via repeated squaring; n < 0 inverts first."""
    if n == 0:
        return constant(1)
    if n < 0:
        return int_pow(reciprocal(f, order=order), -n)
    result = None
    base = f
    while n:
        if n & 1:
            result = base if result is None else result * base
        n >>= 1
        if n:
            base = base * base
    return result


def formal_derivative(f: TruncatedSeries) -> TruncatedSeries:
    """Term-by-term derivative; the window shrinks by one at the top."""
    order = INF if f.order == INF else f.order - 1
    return TruncatedSeries(
        {e - 1: e * c for e, c in f.coeffs.items() if e != 0}, order
    )


def compose(f: TruncatedSeries, g: TruncatedSeries, order=None) -> TruncatedSeries:
    """Substitute g into f. Requires val(g) >= 1 so the result is well
    defined coefficientwise; f may be a Laurent series (negative powers of
    g are handled through the reciprocal)."""
    if not g.is_zero and g.valuation < 1:
        raise PreconditionError("composition requires positive valuation")
    # Nonnegative part of f, evaluated by Horner from the top exponent down.
    top = max((e for e in f.coeffs if e >= 0), default=-1)
    acc = zero()
    for e in range(top, -1, -1):
        acc = acc * g
        c = f.coeffs.get(e)
        if c is not None:
            acc = acc + constant(c)
    # Negative part of f through powers of 1/g.
    neg = sorted((e for e in f.coeffs if e < 0), reverse=True)
    if neg:
        r = reciprocal(g, order=order)
        rpow = zero()
        power = 0
        for e in neg:
            rpow = r if power == 0 else rpow * int_pow(r, -e - power)
            power = -e
            acc = acc + rpow.scale(f.coeffs[e])
    result = acc
    # Never claim more than the window formula min(order_g, order_f*val_g)
    # allows: the unknown tail of g enters at order_g and the unknown tail
    # of f enters at order_f*val_g.
    cap = min(result.order, g.order)
    if f.order != INF:
        cap = min(cap, _mul_order(f.order, g.valuation))
    return result.truncate(cap)


def exp_series(f: TruncatedSeries, order=None) -> TruncatedSeries:
    """exp(f) for a series with valuation >= 1, by the differential
    recurrence y' = f'y. Exact inputs need an explicit order."""
    if not f.is_zero and f.valuation < 1:
        raise PreconditionError("exp_series requires positive valuation")
    if f.is_zero and f.order == INF:
        return constant(1)
    if f.order == INF:
        if order is None:
            raise PreconditionError(
                "exp_series of an exact series requires an explicit order"
            )
        n_out = _check_order(order)
    else:
        n_out = f.order if order is None else min(f.order, _check_order(order))
    if n_out <= 0:
        return zero(n_out)
    y = [Rat(0)] * n_out
    y[0] = Rat(1)
    for n in range(1, n_out):
        acc = Rat(0)
        for j in range(1, n + 1):
            fj = f.coeffs.get(j)
            if fj is not None:
                acc += j * fj * y[n - j]
        y[n] = acc / n
    return TruncatedSeries({k: y[k] for k in range(n_out)}, n_out)


def log_series(f: TruncatedSeries, order=None) -> TruncatedSeries:
    """log(f) for a series with constant term 1, by l' = f'/f."""
    if f.coeffs.get(0) != 1 or f.valuation != 0:
        raise PreconditionError("log_series requires constant term 1")
    if f.order == INF and len(f.coeffs) == 1:
        return zero()
    if f.order == INF:
        if order is None:
            raise PreconditionError(
                "log_series of an exact series requires an explicit order"
            )
        n_out = _check_order(order)
    else:
        n_out = f.order if order is None else min(f.order, _check_order(order))
    if n_out <= 0:
        return zero(n_out)
    l = [Rat(0)] * n_out
    for n in range(1, n_out):
        acc = Rat(0)
        for j in range(1, n):
            fc = f.coeffs.get(n - j)
            if fc is not None:
                acc += j * l[j] * fc
        l[n] = f.coeffs.get(n, Rat(0)) - acc / n
    return TruncatedSeries({k: l[k] for k in range(1, n_out)}, n_out)


# -- compositional inverse ----------------------------------------------
#
# Newton iteration on plain coefficient lists: starting from g = t/f_1, the
# update g <- g - (f(g) - t)/f'(g) doubles the number of correct
# coefficients each round. The raw helpers below work on dense lists over
# exponents [0, w) with no window bookkeeping; the public wrapper restores
# the correct result order, which equals the input's order.


def _raw_mul(a, b, w):
    out = [Rat(0)] * w
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if i + j >= w:
                break
            if bj != 0:
                out[i + j] += ai * bj
    return out


def _raw_recip(a, w):
    out = [Rat(0)] * w
    out[0] = 1 / a[0]
    for k in range(1, w):
        acc = Rat(0)
        for j in range(1, min(k, len(a) - 1) + 1):
            acc += a[j] * out[k - j]
        out[k] = -acc / a[0]
    return out


def _raw_compose(fc: dict, g, w):
    # Horner over the exponents of f (a dict), g a dense list with g[0] = 0.
    top = max(fc, default=-1)
    acc = [Rat(0)] * w
    for e in range(top, -1, -1):
        acc = _raw_mul(acc, g, w)
        c = fc.get(e)
        if c is not None:
            acc[0] += c
    return acc


def compositional_inverse(f: TruncatedSeries, order=None) -> TruncatedSeries:
    """The series g with f(g(t)) = g(f(t)) = t. Requires valuation exactly
    one with a nonzero linear coefficient (a delta series)."""
    if f.is_zero or f.valuation != 1:
        raise PreconditionError("not a delta series")
    if f.order == INF:
        if len(f.coeffs) == 1:
            return monomial(1, 1 / f.coeffs[1])
        if order is None:
            raise PreconditionError(
                "compositional inverse of an exact series requires an explicit order"
            )
        n_out = _check_order(order)
    else:
        n_out = f.order if order is None else min(f.order, _check_order(order))
    if n_out <= 2:
        # Only the linear coefficient is determined (or nothing at all).
        return TruncatedSeries({1: 1 / f.coeffs[1]}, n_out)
    w = n_out  # work with exponents [0, w); correct range is [1, w)
    fc = {e: c for e, c in f.coeffs.items() if 0 < e < w}
    fpc = {e - 1: e * c for e, c in fc.items()}
    g = [Rat(0)] * w
    g[1] = 1 / f.coeffs[1]
    correct = 1
    while correct < w - 1:
        fg = _raw_compose(fc, g, w)
        fg[1] -= 1  # f(g) - t
        update = _raw_mul(fg, _raw_recip(_raw_compose(fpc, g, w), w), w)
        g = [gi - ui for gi, ui in zip(g, update)]
        correct = min(2 * correct, w - 1)
    return TruncatedSeries({k: g[k] for k in range(1, w)}, n_out)
