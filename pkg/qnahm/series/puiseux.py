"""
Truncated Laurent-Puiseux series in q with exact rational coefficients.

A series lives on the exponent lattice (1/D) * Z, i.e., it is a series
in x = q^(1/D). Besides the coefficients, every series carries a
truncation order: coefficients at exponents above the order are unknown
(not zero), and every operation propagates the order pessimistically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from qnahm.series.kronecker import (
    inverse_rational_list,
    mul_rational_lists,
)
from qnahm.series.rationals import (
    INFINITY,
    Order,
    RatLike,
    as_rat,
    floor_index,
    format_order,
    format_rat,
    is_infinite,
    parse_order,
    parse_rat,
)


class NotInvertible(ArithmeticError):
    pass


class InvalidSubstitution(ValueError):
    pass


class OrderExceeded(ValueError):
    pass


def _as_order(order: Order | RatLike) -> Order:
    if isinstance(order, float):
        if is_infinite(order) and order > 0:
            return INFINITY
        raise TypeError(f"Invalid truncation order: {order!r}")
    return as_rat(order)


class PuiseuxSeries:
    """
    Truncated series sum_k coeffs[k] * q^((lo + k) / denom) + O(q^order).

    Instances are immutable and always normalized: no leading or
    trailing zeros are stored, nothing beyond the order is stored, and
    `denom` is the smallest lattice denominator that fits the support.
    """

    __slots__ = ("denom", "lo", "coeffs", "order")

    denom: int
    lo: int
    coeffs: tuple[Fraction, ...]
    order: Order

    def __init__(
        self,
        coeffs: Iterable[RatLike],
        lo: int = 0,
        denom: int = 1,
        order: Order | RatLike = INFINITY,
    ) -> None:
        """
        Create a new series.

        Args:
            coeffs: Coefficients of x^lo, x^(lo + 1), ..., x = q^(1/denom).
            lo: Lattice index of the first coefficient.
            denom: Lattice denominator (a positive integer).
            order: Truncation order in q-units (default: exact series).
        """

        if denom < 1:
            raise ValueError(f"Lattice denominator must be >= 1, not {denom}!")

        values = [as_rat(c) for c in coeffs]
        order = _as_order(order)

        # Drop everything beyond the truncation order
        top = floor_index(order, denom)
        if top is not None:
            values = values[: max(0, top - lo + 1)]

        # Strip zeros at both ends
        start = 0
        while start < len(values) and values[start] == 0:
            start += 1
        end = len(values)
        while end > start and values[end - 1] == 0:
            end -= 1
        values = values[start:end]
        lo += start

        if not values:
            lo, denom = 0, 1

        # Normalize the lattice to the minimal denominator
        g = denom
        for k, c in enumerate(values):
            if c != 0:
                g = math.gcd(g, lo + k)
            if g == 1:
                break
        if g > 1:
            values = values[::g]
            lo //= g
            denom //= g

        object.__setattr__(self, "denom", denom)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "coeffs", tuple(values))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("PuiseuxSeries is immutable!")

    # -------------------------------------------------------------------------
    # Basic properties
    # -------------------------------------------------------------------------

    def is_zero(self) -> bool:
        """
        True if all known coefficients vanish.
        """
        return not self.coeffs

    @property
    def min_exponent(self) -> Order:
        """
        Exponent of the leading term (the order for a zero series).
        """
        if self.is_zero():
            return self.order
        return Fraction(self.lo, self.denom)

    @property
    def max_exponent(self) -> Fraction | None:
        """
        Exponent of the last stored (nonzero) term.
        """
        if self.is_zero():
            return None
        return Fraction(self.lo + len(self.coeffs) - 1, self.denom)

    def expanded(self, denom: int) -> tuple[int, list[Fraction]]:
        """
        Return (lo, coefficients) of this series on the finer lattice
        (1 / denom) * Z, where `denom` must be a multiple of `self.denom`.
        """

        if denom % self.denom != 0:
            raise ValueError(
                f"Lattice 1/{denom} does not refine lattice 1/{self.denom}!"
            )
        factor = denom // self.denom
        if factor == 1 or not self.coeffs:
            return self.lo * factor, list(self.coeffs)
        values = [Fraction(0)] * ((len(self.coeffs) - 1) * factor + 1)
        values[::factor] = self.coeffs
        return self.lo * factor, values

    def terms(self) -> Iterable[tuple[Fraction, Fraction]]:
        """
        Iterate over (exponent, coefficient) pairs of nonzero terms.
        """
        for k, c in enumerate(self.coeffs):
            if c != 0:
                yield Fraction(self.lo + k, self.denom), c

    def integer_coefficients(self) -> bool:
        """
        Whether all stored coefficients are integers.
        """
        return all(c.denominator == 1 for c in self.coeffs)

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------

    def coefficient_at(self, exponent: RatLike) -> Fraction:
        """
        Coefficient of q^exponent, see `coefficient_at()`.
        """
        return coefficient_at(self, as_rat(exponent))

    def truncate(self, order: Order | RatLike) -> PuiseuxSeries:
        """
        Return a copy whose order is at most `order`.
        """
        new_order = min(self.order, _as_order(order))
        return PuiseuxSeries(self.coeffs, self.lo, self.denom, new_order)

    def shift(self, exponent: RatLike) -> PuiseuxSeries:
        """
        Multiply by the monomial q^exponent.
        """

        exponent = as_rat(exponent)
        denom = math.lcm(self.denom, exponent.denominator)
        lo, values = self.expanded(denom)
        lo += int(exponent * denom)
        return PuiseuxSeries(values, lo, denom, self.order + exponent)

    def scale(self, factor: RatLike) -> PuiseuxSeries:
        factor = as_rat(factor)
        if factor == 0:
            return zero_series(self.order)
        return PuiseuxSeries(
            [factor * c for c in self.coeffs],
            self.lo,
            self.denom,
            self.order,
        )

    def __neg__(self) -> PuiseuxSeries:
        return self.scale(-1)

    def __add__(self, other: PuiseuxSeries) -> PuiseuxSeries:
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other: PuiseuxSeries) -> PuiseuxSeries:
        return linear_combine([(1, self), (-1, other)])

    def __mul__(self, other: PuiseuxSeries | RatLike) -> PuiseuxSeries:
        if isinstance(other, PuiseuxSeries):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other: RatLike) -> PuiseuxSeries:
        return self.scale(other)

    def __pow__(self, exponent: int) -> PuiseuxSeries:
        if exponent < 0:
            return invert(self) ** (-exponent)
        result = one()
        base = self
        while exponent:
            if exponent & 1:
                result = mul(result, base)
            exponent >>= 1
            if exponent:
                base = mul(base, base)
        return result

    # -------------------------------------------------------------------------
    # Comparison, hashing, printing and serialization
    # -------------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (
            self.denom == other.denom
            and self.lo == other.lo
            and self.coeffs == other.coeffs
            and self.order == other.order
        )

    def __hash__(self) -> int:
        return hash((self.denom, self.lo, self.coeffs, self.order))

    def __repr__(self) -> str:
        return (
            f"PuiseuxSeries(denom={self.denom}, lo={self.lo}, "
            f"coeffs={[format_rat(c) for c in self.coeffs]}, "
            f"order={format_order(self.order)})"
        )

    def __str__(self) -> str:
        parts = []
        for exponent, c in self.terms():
            if exponent == 0:
                monomial = ""
            elif exponent == 1:
                monomial = "q"
            elif exponent.denominator == 1:
                monomial = f"q^{exponent.numerator}"
            else:
                monomial = f"q^({format_rat(exponent)})"
            if not monomial:
                parts.append(format_rat(c))
            elif c == 1:
                parts.append(monomial)
            elif c == -1:
                parts.append(f"-{monomial}")
            else:
                parts.append(f"{format_rat(c)}*{monomial}")
        text = " + ".join(parts).replace("+ -", "- ") or "0"
        if not is_infinite(self.order):
            text += f" + O(q^({format_order(self.order)}))"
        return text

    def to_dict(self) -> dict[str, Any]:
        """
        Serialize as {"denom", "lo", "order", "coeffs"} (all exact).
        """
        return {
            "denom": self.denom,
            "lo": self.lo,
            "order": format_order(self.order),
            "coeffs": [format_rat(c) for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> PuiseuxSeries:
        return cls(
            coeffs=[parse_rat(str(c)) for c in data["coeffs"]],
            lo=int(data["lo"]),
            denom=int(data["denom"]),
            order=parse_order(data["order"]),
        )


# -----------------------------------------------------------------------------
# Constructors
# -----------------------------------------------------------------------------


def zero_series(order: Order | RatLike = INFINITY) -> PuiseuxSeries:
    return PuiseuxSeries([], order=order)


def one(order: Order | RatLike = INFINITY) -> PuiseuxSeries:
    return PuiseuxSeries([1], order=order)


def monomial(
    coefficient: RatLike,
    exponent: RatLike,
    order: Order | RatLike = INFINITY,
) -> PuiseuxSeries:
    """
    The series coefficient * q^exponent (truncated to `order`).
    """

    exponent = as_rat(exponent)
    return PuiseuxSeries(
        [coefficient],
        lo=exponent.numerator,
        denom=exponent.denominator,
        order=order,
    )


def from_integer_list(
    coeffs: Sequence[int],
    lo: int,
    denom: int,
    order: Order | RatLike,
) -> PuiseuxSeries:
    return PuiseuxSeries([Fraction(c) for c in coeffs], lo, denom, order)


# -----------------------------------------------------------------------------
# Module-level operations
# -----------------------------------------------------------------------------


def linear_combine(
    terms: Iterable[tuple[RatLike, PuiseuxSeries]],
) -> PuiseuxSeries:
    """
    Compute sum_k w_k * f_k on the common lattice, truncated to the
    smallest order among the inputs. No terms give the exact zero.
    """

    terms = [(as_rat(w), f) for w, f in terms]
    if not terms:
        return zero_series()

    order: Order = min(f.order for _, f in terms)
    denom = 1
    for _, f in terms:
        denom = math.lcm(denom, f.denom)

    expanded = [(w, *f.expanded(denom)) for w, f in terms if not f.is_zero()]
    if not expanded:
        return zero_series(order)

    lo = min(lo_f for _, lo_f, _ in expanded)
    hi = max(lo_f + len(c_f) - 1 for _, lo_f, c_f in expanded)
    top = floor_index(order, denom)
    if top is not None:
        hi = min(hi, top)
    if hi < lo:
        return zero_series(order)

    values = [Fraction(0)] * (hi - lo + 1)
    for w, lo_f, c_f in expanded:
        if w == 0:
            continue
        for k, c in enumerate(c_f):
            index = lo_f + k - lo
            if index >= len(values):
                break
            if c != 0:
                values[index] += w * c

    return PuiseuxSeries(values, lo, denom, order)


def product_order(f: PuiseuxSeries, g: PuiseuxSeries) -> Order:
    """
    The largest order to which f * g is determined by the known parts
    of f and g: min(order_f + min_exp_g, order_g + min_exp_f).
    """

    first = f.order + g.min_exponent
    second = g.order + f.min_exponent
    order = min(first, second)
    return INFINITY if is_infinite(order) else Fraction(order)


def mul(f: PuiseuxSeries, g: PuiseuxSeries) -> PuiseuxSeries:
    """
    Cauchy product of two series on their common lattice.
    """

    order = product_order(f, g)
    if f.is_zero() or g.is_zero():
        return zero_series(order)

    denom = math.lcm(f.denom, g.denom)
    lo_f, c_f = f.expanded(denom)
    lo_g, c_g = g.expanded(denom)
    lo = lo_f + lo_g

    top = floor_index(order, denom)
    length = None if top is None else top - lo + 1
    if length is not None and length <= 0:
        return zero_series(order)

    values = mul_rational_lists(c_f, c_g, length)
    return PuiseuxSeries(values, lo, denom, order)


def invert(
    f: PuiseuxSeries,
    order: Order | RatLike | None = None,
) -> PuiseuxSeries:
    """
    Compute 1 / f to the full order determined by f (or to `order`, if
    that is smaller). Exact series other than monomials need `order`.

    Raises:
        NotInvertible: If f has no nonzero (known) coefficient.
    """

    if f.is_zero():
        raise NotInvertible("Cannot invert a series with no leading term!")

    lead = f.coeffs[0]
    m = Fraction(f.lo, f.denom)

    # Exact monomials have exact inverses
    if len(f.coeffs) == 1 and is_infinite(f.order):
        result = PuiseuxSeries([1 / lead], -f.lo, f.denom, INFINITY)
        return result if order is None else result.truncate(order)

    # f = q^m * u, u known to order_f - m, so q^-m / u known to order_f - 2m
    target: Order = f.order - 2 * m if not is_infinite(f.order) else INFINITY
    if order is not None:
        target = min(target, _as_order(order))
    if is_infinite(target):
        raise ValueError(
            "Inverting an exact series requires an explicit `order`!"
        )

    top = floor_index(target, f.denom)
    assert top is not None
    length = top + f.lo + 1
    if length <= 0:
        return zero_series(target)

    values = inverse_rational_list(list(f.coeffs), length)
    return PuiseuxSeries(values, -f.lo, f.denom, target)


def substitute_q_power(f: PuiseuxSeries, k: RatLike) -> PuiseuxSeries:
    """
    Apply q -> q^k (k > 0): every exponent e becomes k * e.
    """

    k = as_rat(k)
    if k <= 0:
        raise InvalidSubstitution(f"Exponent must be positive, got {k}!")

    p, r = k.numerator, k.denominator
    order = f.order * k if not is_infinite(f.order) else INFINITY
    if f.is_zero():
        return zero_series(order)

    values = [Fraction(0)] * ((len(f.coeffs) - 1) * p + 1)
    values[::p] = f.coeffs
    return PuiseuxSeries(values, f.lo * p, f.denom * r, order)


def flip_base_sign(
    f: PuiseuxSeries,
    denom: int | None = None,
) -> PuiseuxSeries:
    """
    Apply x -> -x, where x = q^(1/denom) is the base variable (by
    default, the series' own normalized lattice).
    """

    denom = f.denom if denom is None else denom
    lo, values = f.expanded(denom)
    flipped = [-c if (lo + k) % 2 else c for k, c in enumerate(values)]
    return PuiseuxSeries(flipped, lo, denom, f.order)


def coefficient_at(f: PuiseuxSeries, exponent: RatLike) -> Fraction:
    """
    Exact coefficient of q^exponent (zero off the lattice).

    Raises:
        OrderExceeded: If the exponent is beyond the truncation order.
    """

    exponent = as_rat(exponent)
    if exponent > f.order:
        raise OrderExceeded(
            f"Exponent {format_rat(exponent)} exceeds the order "
            f"{format_order(f.order)} of the series!"
        )

    scaled = exponent * f.denom
    if scaled.denominator != 1:
        return Fraction(0)
    index = scaled.numerator - f.lo
    if 0 <= index < len(f.coeffs):
        return f.coeffs[index]
    return Fraction(0)


@dataclass(frozen=True)
class Equal:
    """
    Result of a successful comparison.
    """

    order: Fraction


@dataclass(frozen=True)
class FirstMismatch:
    """
    The first exponent at which two series differ.
    """

    exponent: Fraction
    lhs_coeff: Fraction
    rhs_coeff: Fraction

    def to_dict(self) -> dict[str, str]:
        return {
            "exponent": format_rat(self.exponent),
            "lhs": format_rat(self.lhs_coeff),
            "rhs": format_rat(self.rhs_coeff),
        }


Comparison = Equal | FirstMismatch


def equal_to_order(
    f: PuiseuxSeries,
    g: PuiseuxSeries,
    order: RatLike,
) -> Comparison:
    """
    Compare f and g exactly for all exponents up to `order`.

    Raises:
        OrderExceeded: If `order` exceeds the order of f or of g.
    """

    order = as_rat(order)
    for name, series in (("left", f), ("right", g)):
        if order > series.order:
            raise OrderExceeded(
                f"Cannot compare to order {format_rat(order)}: the {name} "
                f"series is only known to {format_order(series.order)}!"
            )

    denom = math.lcm(f.denom, g.denom)
    lo_f, c_f = f.expanded(denom)
    lo_g, c_g = g.expanded(denom)
    top = math.floor(order * denom)

    starts = [lo for lo, c in ((lo_f, c_f), (lo_g, c_g)) if c]
    if not starts:
        return Equal(order)

    zero = Fraction(0)
    for index in range(min(starts), top + 1):
        a = c_f[index - lo_f] if 0 <= index - lo_f < len(c_f) else zero
        b = c_g[index - lo_g] if 0 <= index - lo_g < len(c_g) else zero
        if a != b:
            return FirstMismatch(Fraction(index, denom), a, b)
    return Equal(order)
