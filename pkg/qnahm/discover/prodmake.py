"""
Recover the exponents of an infinite product from a raw series:

    f = c * q^mu * prod_{n >= 1} (1 - x^n)^(-e_n),    x = q^(1 / D).

The exponents are peeled off one at a time: e_n is the coefficient of
x^n in the current remainder, which is then multiplied by (1 - x^n)^e_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from qnahm.qfactors.monomials import q_power
from qnahm.qfactors.products import ProductSpec, binomial_spec
from qnahm.series.puiseux import PuiseuxSeries
from qnahm.series.rationals import (
    RatLike,
    as_rat,
    format_rat,
    is_infinite,
)


class NotAProduct(ValueError):
    pass


@dataclass(frozen=True)
class ExponentProfile:
    """
    The data (c, mu, e_1, ..., e_M) of a product on the lattice x = q^(1/D).
    """

    e: tuple[int, ...]
    mu: Fraction = Fraction(0)
    c: Fraction = Fraction(1)
    denom: int = 1

    def __post_init__(self) -> None:
        if self.denom < 1:
            raise ValueError("Lattice denominator must be >= 1!")
        object.__setattr__(self, "e", tuple(int(x) for x in self.e))
        object.__setattr__(self, "mu", as_rat(self.mu))
        object.__setattr__(self, "c", as_rat(self.c))

    @property
    def order(self) -> Fraction:
        """
        Number of q-units (relative to q^mu) covered by the profile.
        """
        return Fraction(len(self.e), self.denom)

    def to_product(self) -> ProductSpec:
        """
        The finite product c * q^mu * prod_{n <= M} (1 - x^n)^(-e_n),
        which agrees with the analyzed series up to q^(mu + order).
        """

        result = ProductSpec(constant=self.c, monomial_exp=self.mu)
        for n, e_n in enumerate(self.e, start=1):
            if e_n != 0:
                monomial = q_power(Fraction(n, self.denom))
                result = result * binomial_spec(monomial, -e_n)
        return result

    def to_dict(self) -> dict[str, Any]:
        return {
            "c": format_rat(self.c),
            "mu": format_rat(self.mu),
            "denom": self.denom,
            "e": list(self.e),
        }


def _multiply_binomial(values: list[Fraction], n: int, power: int) -> None:
    """
    In place: values <- values * (1 - x^n)^power (truncated).
    """

    top = len(values)
    for _ in range(abs(power)):
        if power > 0:
            for k in range(top - 1, n - 1, -1):
                values[k] -= values[k - n]
        else:
            for k in range(n, top):
                values[k] += values[k - n]


def prodmake(
    f: PuiseuxSeries,
    order: RatLike,
    denom: int | None = None,
) -> ExponentProfile:
    """
    Compute the exponent profile of `f` up to q^(mu + order).

    Args:
        f: A series with a nonzero leading coefficient.
        order: Number of q-units after the leading term to analyze (it
            is capped by what is known about `f`).
        denom: Optional lattice denominator D to work on; it is refined
            if `f` needs a finer lattice.

    Returns:
        The profile with e_1, ..., e_M, M = floor(order * D).

    Raises:
        NotAProduct: If `f` vanishes or some e_n is not an integer.
    """

    if f.is_zero():
        raise NotAProduct("Cannot factor a vanishing series!")

    c = f.coeffs[0]
    mu = Fraction(f.min_exponent)
    g = f.shift(-mu).scale(1 / c)

    D = g.denom if denom is None else math.lcm(g.denom, denom)
    length = as_rat(order)
    if not is_infinite(g.order):
        length = min(length, Fraction(g.order))
    top = math.floor(length * D)

    _, values = g.expanded(D)
    values = values[: top + 1]
    values += [Fraction(0)] * (top + 1 - len(values))

    exponents = []
    for n in range(1, top + 1):
        e_n = values[n]
        if e_n.denominator != 1:
            raise NotAProduct(
                f"Exponent of (1 - q^({format_rat(Fraction(n, D))})) is "
                f"{format_rat(e_n)}, not an integer!"
            )
        _multiply_binomial(values, n, int(e_n))
        exponents.append(int(e_n))

    return ExponentProfile(tuple(exponents), mu, c, D)
