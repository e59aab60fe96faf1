"""
Theta sums over the integers and the Jacobi triple product.
"""

import math
from fractions import Fraction

from qnahm.qfactors.monomials import SignedMonomial, q_power
from qnahm.qfactors.pochhammer import poch_finite, poch_infinite
from qnahm.qfactors.products import PochFactor, ProductSpec
from qnahm.series.puiseux import PuiseuxSeries, one
from qnahm.series.rationals import RatLike, as_rat, lcm_of_denominators


class DivergentTheta(ValueError):
    pass


def theta_exponents(a: Fraction, b: Fraction, order: Fraction) -> list[int]:
    """
    All integers n with a * n^2 + b * n <= order, in increasing order.
    """

    def value(n: int) -> Fraction:
        return a * n * n + b * n

    # The parabola is convex, so walk outwards from the vertex
    center = math.floor(-b / (2 * a))
    result = []
    n = center
    while value(n) <= order:
        result.append(n)
        n -= 1
    result.reverse()
    n = center + 1
    while value(n) <= order:
        result.append(n)
        n += 1
    return result


def theta_sum(a: RatLike, b: RatLike, order: RatLike) -> PuiseuxSeries:
    """
    The truncated theta sum sum_{n in Z} q^(a n^2 + b n) for a > 0.

    Raises:
        DivergentTheta: If a <= 0.
    """

    a, b, order = as_rat(a), as_rat(b), as_rat(order)
    if a <= 0:
        raise DivergentTheta(f"Theta sums need a > 0, got a = {a}!")

    exponents = [a * n * n + b * n for n in theta_exponents(a, b, order)]
    if not exponents:
        return PuiseuxSeries([], order=order)

    denom = lcm_of_denominators(exponents)
    lo = min(exponents) * denom
    values = [Fraction(0)] * int(max(exponents) * denom - lo + 1)
    for e in exponents:
        values[int(e * denom - lo)] += 1
    return PuiseuxSeries(values, int(lo), denom, order)


def triple_product_spec(
    z: SignedMonomial,
    base: SignedMonomial | None = None,
) -> ProductSpec:
    """
    The product side (-z, -base/z, base; base)_inf of the Jacobi triple
    product sum_{n in Z} base^((n^2 - n)/2) z^n.
    """

    base = q_power(1) if base is None else base
    return ProductSpec(
        factors=(
            PochFactor(-z, base),
            PochFactor(-(base * z.inverse()), base),
            PochFactor(base, base),
        )
    )


def triple_product_series(
    z: SignedMonomial,
    order: RatLike,
    base: SignedMonomial | None = None,
) -> PuiseuxSeries:
    """
    Expand (-z, -base/z, base; base)_inf to `order`, also when some of
    the arguments have non-positive exponents: the finitely many factors
    with non-positive exponents are split off as exact Laurent
    polynomials via (a; b)_inf = (a; b)_k * (a b^k; b)_inf.
    """

    base = q_power(1) if base is None else base
    order = as_rat(order)

    finite_parts = []
    infinite_args = []
    for arg in (-z, -(base * z.inverse()), base):
        k = 0
        while arg.exp + k * base.exp <= 0:
            k += 1
        finite_parts.append(poch_finite(arg, base, k))
        infinite_args.append(arg * base**k)

    # The finite parts can lower the exponents, so expand the infinite
    # parts further than `order`
    extra = -sum(
        (f.min_exponent for f in finite_parts if not f.is_zero()),
        Fraction(0),
    )
    result = one()
    for part in finite_parts:
        result = result * part
    for arg in infinite_args:
        result = result * poch_infinite(arg, base, order + extra)
    return result.truncate(order)
