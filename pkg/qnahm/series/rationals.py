"""
Helpers for exact rational scalars and (possibly infinite) orders.
"""

import math
from fractions import Fraction
from typing import Iterable

# Truncation orders are either a `Fraction` or this sentinel
INFINITY = math.inf

Rat = Fraction
Order = Fraction | float

RatLike = Fraction | int | str


def as_rat(value: RatLike) -> Fraction:
    """
    Convert an integer, a `Fraction` or a string like "-3/4" into a
    `Fraction`. Floats are rejected because they are not exact.
    """

    if isinstance(value, (bool, float)):
        raise TypeError(f"Cannot convert {value!r} to an exact rational!")
    if isinstance(value, str):
        return parse_rat(value)
    return Fraction(value)


def parse_rat(text: str) -> Fraction:
    """
    Parse a rational number in the "p/q" format (or a plain integer).
    """

    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Invalid rational number: '{text}'") from e


def format_rat(value: Fraction | int) -> str:
    """
    Format a rational number as "p/q" (or "p" for integers).
    """

    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_order(text: str | int) -> Order:
    """
    Parse a truncation order; "inf" denotes the infinite order.
    """

    if isinstance(text, str) and text.strip().lower() in ("inf", "+inf"):
        return INFINITY
    return as_rat(text)


def format_order(order: Order) -> str:
    """
    Format a truncation order (counterpart of `parse_order()`).
    """

    if is_infinite(order):
        return "inf"
    return format_rat(Fraction(order))


def is_infinite(order: Order) -> bool:
    return isinstance(order, float) and math.isinf(order)


def lcm_of_denominators(values: Iterable[Fraction | int]) -> int:
    """
    Least common multiple of the denominators of the given rationals.
    """

    result = 1
    for value in values:
        result = math.lcm(result, Fraction(value).denominator)
    return result


def floor_index(order: Order, denom: int) -> int | None:
    """
    Largest lattice index `k` with `k / denom <= order`, or None if the
    order is infinite.
    """

    if is_infinite(order):
        return None
    return math.floor(Fraction(order) * denom)
