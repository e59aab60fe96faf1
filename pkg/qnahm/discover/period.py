"""
Exact periodicity of exponent profiles, and the correspondence between
periodic profiles and products of the form prod_c (x^c; x^p)_inf^(-e_c).

A product of (generalized) Dedekind eta functions has an exponent
profile that is periodic from n = 1 on, so a profile with a transient
(like the one of 1 / ((1 - q) (q; q^2)_inf^2)) is rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from qnahm.discover.prodmake import ExponentProfile
from qnahm.qfactors.monomials import q_power
from qnahm.qfactors.products import PochFactor, ProductSpec


class InsufficientOrder(ValueError):
    pass


@dataclass(frozen=True)
class Period:
    """
    A profile with e_n = pattern[(n - 1) mod period] on x = q^(1/denom).
    """

    period: int
    pattern: tuple[int, ...]
    denom: int = 1

    def __post_init__(self) -> None:
        if self.period < 1 or len(self.pattern) != self.period:
            raise ValueError(
                f"Pattern {self.pattern} does not have length {self.period}!"
            )
        object.__setattr__(self, "pattern", tuple(self.pattern))

    def to_dict(self) -> dict[str, Any]:
        return {
            "period": self.period,
            "pattern": list(self.pattern),
            "denom": self.denom,
        }


def _smallest_period(values: Sequence[int], max_period: int) -> int | None:
    for p in range(1, max_period + 1):
        if all(values[k] == values[k % p] for k in range(len(values))):
            return p
    return None


def detect_period(
    profile: ExponentProfile,
    max_period: int,
    min_repeats: int = 3,
) -> Period | None:
    """
    Find the smallest p <= max_period such that the whole profile is
    periodic with period p (starting at n = 1).

    Args:
        profile: The exponent profile.
        max_period: Largest period to try.
        min_repeats: The profile must cover at least this many periods
            of the largest candidate (at least 3).

    Returns:
        The period and its pattern, or None if there is none.

    Raises:
        InsufficientOrder: If the profile is too short.
    """

    if min_repeats < 3:
        raise ValueError(f"Need min_repeats >= 3, got {min_repeats}!")
    if max_period < 1:
        raise ValueError(f"Need max_period >= 1, got {max_period}!")

    needed = max_period * min_repeats
    if len(profile.e) < needed:
        raise InsufficientOrder(
            f"Profile has {len(profile.e)} exponents, but {needed} are "
            f"needed for periods up to {max_period}!"
        )

    p = _smallest_period(profile.e, max_period)
    if p is None:
        return None
    return Period(p, profile.e[:p], profile.denom)


def pattern_to_product(
    period: int,
    pattern: Sequence[int],
    denom: int = 1,
) -> ProductSpec:
    """
    The product prod_{c=1}^{p} (x^c; x^p)_inf^(-pattern_c), x = q^(1/D).
    The residue c = p gives the factor J_p = (x^p; x^p)_inf.
    """

    if len(pattern) != period:
        raise ValueError(f"Pattern {pattern} does not have length {period}!")

    base = q_power(Fraction(period, denom))
    return ProductSpec(
        factors=tuple(
            PochFactor(q_power(Fraction(c, denom)), base, -e_c)
            for c, e_c in enumerate(pattern, start=1)
            if e_c != 0
        )
    )


def product_pattern(product: ProductSpec) -> Period | None:
    """
    The (smallest) periodic profile of a product, read off from its
    factors after normalization. Returns None if some factor (x^a; x^m)
    has a > m, because such a product has a transient.
    """

    factors = product.normalized().factors
    denom = product.lattice()
    if not factors:
        return Period(1, (0,), denom)

    # Work with integer exponents on x = q^(1 / denom)
    pairs = []
    for f in factors:
        a, m = f.arg.exp * denom, f.base.exp * denom
        if a > m:
            return None
        pairs.append((int(a), int(m), f.power))

    period = math.lcm(*(m for _, m, _ in pairs))
    pattern = [0] * period
    for a, m, power in pairs:
        for c in range(a, period + 1, m):
            pattern[c - 1] -= power

    p = next(
        d
        for d in range(1, period + 1)
        if period % d == 0
        and all(pattern[k] == pattern[k % d] for k in range(period))
    )
    return Period(p, tuple(pattern[:p]), denom)
