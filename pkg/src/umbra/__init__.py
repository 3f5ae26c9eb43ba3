"""Exact-arithmetic umbral calculus.

Delta operators as truncated formal series in the derivative, polynomial
sequences of binomial type, Lagrange inversion, connection constants, and
the logarithmic extension built on harmonic logarithms. All coefficients
are rational and exact; numeric evaluation happens only at the boundary.
"""

from .errors import (
    ParseError,
    PreconditionError,
    UmbraError,
    VerificationFailure,
)
from .numbers import (
    bernoulli,
    bernoulli_higher,
    elementary_symmetric,
    roman_coefficient,
    roman_factorial,
    roman_number,
    stirling_first,
    stirling_second,
)
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
    log_series,
    monomial,
    mul,
    reciprocal,
)
from .operators import (
    CATALOG_NAMES,
    DELTA_NAMES,
    DeltaOperator,
    Polynomial,
    ShiftInvariantOperator,
    apply_to_polynomial,
    catalog,
    expand_in_basis,
    lagrange_inversion,
    pincherle_derivative,
)
from .sequences import (
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
from .logarithmic import (
    HarmonicLogSeries,
    LogBinomialSequence,
    apply_operator,
    augmentation,
    evaluate_numeric,
    harmonic_log,
    log_conjugate_sequence,
    log_lower_factorial,
    log_sequence,
    newton_expand,
    residual_term,
    roman_shift,
    tail_bound,
)
from .parsing import elaborate, operator_from_text, parse_operator, pretty
from .suites import SUITE_NAMES, run_suite

__version__ = "0.1.0"

__all__ = [
    "BinomialSequence",
    "CATALOG_NAMES",
    "ConnectionMatrix",
    "DELTA_NAMES",
    "DeltaOperator",
    "HarmonicLogSeries",
    "INF",
    "LogBinomialSequence",
    "ParseError",
    "Polynomial",
    "PreconditionError",
    "SUITE_NAMES",
    "ShiftInvariantOperator",
    "TruncatedSeries",
    "UmbraError",
    "VerificationFailure",
    "apply_operator",
    "apply_to_polynomial",
    "augmentation",
    "bernoulli",
    "bernoulli_higher",
    "catalog",
    "compose",
    "compositional_inverse",
    "connection_constants",
    "conjugate_sequence",
    "constant",
    "elaborate",
    "elementary_symmetric",
    "evaluate_numeric",
    "exp_series",
    "expand_in_basis",
    "formal_derivative",
    "from_coeffs",
    "generate_recurrence",
    "generate_transfer",
    "harmonic_log",
    "identity",
    "int_pow",
    "lagrange_inversion",
    "log_conjugate_sequence",
    "log_lower_factorial",
    "log_sequence",
    "log_series",
    "monomial",
    "mul",
    "newton_expand",
    "operator_from_text",
    "parse_operator",
    "pincherle_derivative",
    "pretty",
    "ramey_sequence",
    "reciprocal",
    "residual_term",
    "roman_coefficient",
    "roman_factorial",
    "roman_number",
    "roman_shift",
    "run_suite",
    "stirling_first",
    "stirling_second",
    "taylor_expand",
    "umbral_compose",
    "verify_binomial_identity",
]
