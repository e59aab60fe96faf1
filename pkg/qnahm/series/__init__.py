"""
Exact truncated Laurent-Puiseux series arithmetic.
"""

from qnahm.series.puiseux import (
    Comparison,
    Equal,
    FirstMismatch,
    InvalidSubstitution,
    NotInvertible,
    OrderExceeded,
    PuiseuxSeries,
    coefficient_at,
    equal_to_order,
    flip_base_sign,
    invert,
    linear_combine,
    monomial,
    mul,
    one,
    substitute_q_power,
    zero_series,
)
from qnahm.series.rationals import (
    INFINITY,
    Order,
    Rat,
    as_rat,
    format_rat,
    parse_rat,
)

__all__ = [
    "Comparison",
    "Equal",
    "FirstMismatch",
    "INFINITY",
    "InvalidSubstitution",
    "NotInvertible",
    "Order",
    "OrderExceeded",
    "PuiseuxSeries",
    "Rat",
    "as_rat",
    "coefficient_at",
    "equal_to_order",
    "flip_base_sign",
    "format_rat",
    "invert",
    "linear_combine",
    "monomial",
    "mul",
    "one",
    "parse_rat",
    "substitute_q_power",
    "zero_series",
]
