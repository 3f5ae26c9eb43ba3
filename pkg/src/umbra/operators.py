"""Shift-invariant operators on polynomials.

A shift-invariant operator is represented by its formal series in the
derivative D: applying sum a_k D^k to a polynomial is a finite sum because
high derivatives vanish. A delta operator is the special case where the
series has valuation exactly one (no constant term, nonzero D coefficient);
these are the operators that admit basic sequences of binomial type.

The catalog builds the standard named operators at a requested truncation
order. Lagrange inversion extracts coefficients of g(f^(-1)) as residues
without computing the compositional inverse itself.
"""
from __future__ import annotations

from fractions import Fraction as Rat
from math import factorial
from typing import Mapping, Optional, Sequence

from .errors import PreconditionError
from .series import (
    INF,
    TruncatedSeries,
    compose,
    compositional_inverse,
    constant,
    exp_series,
    formal_derivative,
    from_coeffs,
    identity,
    int_pow,
    monomial,
    mul,
    reciprocal,
)


class Polynomial:
    """Dense polynomial in x with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Rat] = ()):
        cs = [Rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x_power(cls, n: int) -> "Polynomial":
        return cls([Rat(0)] * n + [Rat(1)])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned degree -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> Rat:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Rat(0)

    def evaluate(self, x) -> Rat:
        x = Rat(x)
        acc = Rat(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def mul_x(self) -> "Polynomial":
        """Multiply by x."""
        if self.is_zero:
            return self
        return Polynomial((Rat(0),) + self.coeffs)

    def shift(self, a) -> "Polynomial":
        """The polynomial p(x + a)."""
        a = Rat(a)
        acc = Polynomial()
        xa = Polynomial([a, Rat(1)])
        for c in reversed(self.coeffs):
            acc = acc * xa + Polynomial([c])
        return acc

    def scale(self, c) -> "Polynomial":
        c = Rat(c)
        return Polynomial([c * v for v in self.coeffs])

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)]
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, (int, Rat)):
            return self.scale(other)
        out = [Rat(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "<poly 0>"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficient(k)
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*x")
            else:
                parts.append(f"{c}*x^{k}")
        return "<poly " + " + ".join(parts) + ">"


class ShiftInvariantOperator:
    """An operator sum a_k D^k given by a truncated series in D."""

    __slots__ = ("series", "name", "parameters")

    def __init__(
        self,
        series: TruncatedSeries,
        name: Optional[str] = None,
        parameters: Optional[Mapping[str, Rat]] = None,
    ):
        if series.valuation < 0 and not series.is_zero:
            raise PreconditionError("negative powers of D undefined on polynomials")
        self.series = series
        self.name = name
        self.parameters = dict(parameters or {})

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_to_polynomial(self, p)

    def __mul__(self, other):
        if isinstance(other, (int, Rat)):
            return ShiftInvariantOperator(self.series.scale(other))
        return ShiftInvariantOperator(self.series * _series_of(other))

    __rmul__ = __mul__

    def __add__(self, other):
        return ShiftInvariantOperator(self.series + _series_of(other))

    def __sub__(self, other):
        return ShiftInvariantOperator(self.series - _series_of(other))

    def __pow__(self, n: int):
        return ShiftInvariantOperator(int_pow(self.series, n))

    def __repr__(self):
        label = self.name or "operator"
        if self.parameters:
            args = ", ".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
            label = f"{label}({args})"
        return f"<{label}: {self.series!r}>"


class DeltaOperator(ShiftInvariantOperator):
    """A shift-invariant operator whose series has valuation exactly one."""

    def __init__(self, series, name=None, parameters=None):
        if series.is_zero or series.valuation != 1:
            raise PreconditionError("not a delta series")
        super().__init__(series, name, parameters)

    def inverse_series(self, order=None) -> TruncatedSeries:
        """The compositional inverse of the operator's series."""
        return compositional_inverse(self.series, order=order)


def _series_of(x) -> TruncatedSeries:
    if isinstance(x, ShiftInvariantOperator):
        return x.series
    if isinstance(x, TruncatedSeries):
        return x
    raise TypeError(f"expected an operator or series, got {x!r}")


def apply_to_polynomial(T, p: Polynomial) -> Polynomial:
    """Apply sum a_k D^k to p. Exactness demands the series window cover
    every derivative that can act: order > deg(p)."""
    s = _series_of(T)
    if s.valuation < 0 and not s.is_zero:
        raise PreconditionError("negative powers of D undefined on polynomials")
    if s.order <= p.degree:
        raise PreconditionError("truncation too small for exact action")
    acc = Polynomial()
    deriv = p
    for k in range(0, p.degree + 1):
        c = s.coeffs.get(k)
        if c is not None:
            acc = acc + deriv.scale(c)
        deriv = deriv.derivative()
    return acc


def pincherle_derivative(T) -> ShiftInvariantOperator:
    """The commutator [T, x], whose series is the derivative of T's."""
    s = _series_of(T)
    name = None
    if isinstance(T, ShiftInvariantOperator) and T.name:
        name = T.name + "'"
    params = T.parameters if isinstance(T, ShiftInvariantOperator) else None
    return ShiftInvariantOperator(formal_derivative(s), name, params)


def expand_in_basis(T, Q, k_max: Optional[int] = None) -> list:
    """Hurwitz coefficients c_k with T = sum c_k Q^k / k!, from the first
    expansion theorem: c_k = k! [t^k] (T's series composed with the
    compositional inverse of Q's series)."""
    ts = _series_of(T)
    qs = _series_of(Q)
    if qs.is_zero or qs.valuation != 1:
        raise PreconditionError("not a delta series")
    comp = compose(ts, compositional_inverse(qs))
    if k_max is None:
        if comp.order == INF:
            raise PreconditionError(
                "expansion of exact series requires an explicit k_max"
            )
        k_max = comp.order - 1
    if k_max >= comp.order:
        raise PreconditionError("expansion order exceeds determined window")
    return [factorial(k) * comp.coefficient(k) for k in range(k_max + 1)]


def lagrange_inversion(f, g, k_max: int) -> list:
    """Coefficients of g composed with the compositional inverse of f, for
    exponents d..k_max where d is the valuation of g, extracted as residues:
    [t^k] g(f^(-1)) = [t^(-1)] g f' f^(-1-k).

    Works for Laurent series g (negative d), where direct composition in
    the power-series ring does not apply."""
    fs = _series_of(f)
    if fs.is_zero or fs.valuation != 1:
        raise PreconditionError("not a delta series")
    gs = _series_of(g)
    if gs.is_zero:
        raise PreconditionError("lagrange inversion requires a nonzero series")
    d = gs.valuation
    base = gs * formal_derivative(fs)
    finv = reciprocal(fs)
    # h runs through f^(-1-k); positive powers are taken from f directly to
    # avoid the window loss of a double reciprocal.
    m = d + 1
    h = int_pow(finv, m) if m >= 0 else int_pow(fs, -m)
    out = []
    for _k in range(d, k_max + 1):
        prod = base * h
        if prod.order <= -1:
            raise PreconditionError("k_max exceeds determined window")
        out.append(prod.coefficient(-1))
        h = h * finv
    return out


# -- the catalog ---------------------------------------------------------

CATALOG_NAMES = (
    "derivative",
    "shift",
    "forward_difference",
    "backward_difference",
    "abel",
    "laguerre",
    "weierstrass",
    "bernoulli_op",
)

# Catalog entries whose series have valuation one; these admit basic
# sequences of binomial type.
DELTA_NAMES = (
    "derivative",
    "forward_difference",
    "backward_difference",
    "abel",
    "laguerre",
)


def _require_param(name: str, parameters: Mapping[str, Rat], key: str) -> Rat:
    if key not in parameters:
        raise PreconditionError(f"operator '{name}' requires parameter '{key}'")
    return Rat(parameters[key])


def catalog(name: str, parameters: Optional[Mapping[str, Rat]] = None, order: int = 16):
    """Build a named operator at the given truncation order.

    Delta operators: derivative D, forward_difference (E - 1),
    backward_difference (1 - E^(-1)), abel(b) = D E^b, laguerre D/(D-1).
    Other shift-invariant operators: shift(a) = E^a, weierstrass
    exp(D^2/2), bernoulli_op (e^D - 1)/D.
    """
    parameters = dict(parameters or {})
    t = identity()
    if name == "derivative":
        return DeltaOperator(t, name)
    if name == "shift":
        a = _require_param(name, parameters, "a")
        series = exp_series(monomial(1, a), order=order)
        return ShiftInvariantOperator(series, name, {"a": a})
    if name == "forward_difference":
        series = exp_series(t, order=order) - constant(1)
        return DeltaOperator(series, name)
    if name == "backward_difference":
        series = constant(1) - exp_series(monomial(1, -1), order=order)
        return DeltaOperator(series, name)
    if name == "abel":
        b = _require_param(name, parameters, "b")
        series = mul(t, exp_series(monomial(1, b), order=order))
        return DeltaOperator(series, name, {"b": b})
    if name == "laguerre":
        series = mul(t, reciprocal(from_coeffs([-1, 1], order=INF), order=order))
        return DeltaOperator(series, name)
    if name == "weierstrass":
        series = exp_series(monomial(2, Rat(1, 2)), order=order)
        return ShiftInvariantOperator(series, name)
    if name == "bernoulli_op":
        series = mul(exp_series(t, order=order) - constant(1), monomial(-1))
        return ShiftInvariantOperator(series, name)
    raise PreconditionError(f"unknown catalog operator '{name}'")
