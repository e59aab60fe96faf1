"""
The Bailey lemma (in its limiting form a single application of it gives
a sum-to-product identity) and a few finite identities that are needed
to build and verify Bailey pairs.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Any

from qnahm.bailey.pairs import BaileyPair
from qnahm.nahm.evaluation import eval_sumspec
from qnahm.nahm.specs import AffineForm, PochTerm, QuadraticForm, SumSpec
from qnahm.qfactors.monomials import Q, q_power
from qnahm.qfactors.pochhammer import (
    finite_length_reciprocal,
    poch_finite,
    poch_infinite,
    qbinomial,
)
from qnahm.series.puiseux import (
    Equal,
    PuiseuxSeries,
    equal_to_order,
    linear_combine,
    monomial,
    zero_series,
)
from qnahm.series.rationals import RatLike, as_rat
from qnahm.utils.multiproc import parallel_map


class InvalidParams(ValueError):
    pass


# The sign character (-1)^i of a sum over one index
ALTERNATING = QuadraticForm(((Fraction(0),),), (Fraction(1),))


# -----------------------------------------------------------------------------
# Limiting form of the Bailey lemma
# -----------------------------------------------------------------------------


def bailey_limit_identity(
    pair: BaileyPair,
    order: RatLike,
) -> tuple[PuiseuxSeries, PuiseuxSeries]:
    """
    Both sides of

        sum_n a^n q^(n^2) beta_n = 1 / (aq; q)_inf sum_n a^n q^(n^2) alpha_n

    truncated to `order`, for a Bailey pair relative to a = q^e.

    Args:
        pair: The Bailey pair (with e = `pair.a_exp` >= 0).
        order: Truncation order N.

    Returns:
        A tuple (lhs, rhs) of series with order N.
    """

    order = as_rat(order)
    e = pair.a_exp
    floor = pair.exponent_floor()

    lhs_terms = []
    rhs_terms = []
    n = 0
    while n * n + e * n + floor <= order:
        weight = n * n + e * n
        beta = pair.beta_n(n, order - weight)
        lhs_terms.append((1, beta.shift(weight)))
        rhs_terms.append((1, pair.alpha_n(n).shift(weight)))
        n += 1

    lhs = linear_combine(lhs_terms).truncate(order)
    alpha_sum = linear_combine(rhs_terms).truncate(order)
    if alpha_sum.is_zero():
        return lhs, zero_series(order)

    # The alpha sum may start at a negative exponent
    lowest = alpha_sum.min_exponent
    kernel = poch_infinite(pair.a * Q, Q, order - lowest, power=-1)
    rhs = (alpha_sum * kernel).truncate(order)
    return lhs, rhs


# -----------------------------------------------------------------------------
# A bilateral sum that vanishes
# -----------------------------------------------------------------------------


def vanishing_spec(n: int, t: int, s: int) -> SumSpec:
    """
    The sum over -n - t <= i <= n of

        (-1)^i q^((i^2 + s i) / 2) / ((q; q)_(n - i) (q; q)_(n + t + i))

    as a (finite) bilateral `SumSpec`.

    Raises:
        InvalidParams: Unless n >= 1, t >= 0, s odd, -1 <= s <= 2t + 1.
    """

    if n < 1:
        raise InvalidParams(f"Need n >= 1, got n={n}!")
    if t < 0:
        raise InvalidParams(f"Need t >= 0, got t={t}!")
    if s % 2 == 0 or not -1 <= s <= 2 * t + 1:
        raise InvalidParams(
            f"Need an odd s with -1 <= s <= 2t + 1 = {2 * t + 1}, got s={s}!"
        )

    return SumSpec(
        exponent=QuadraticForm(((Fraction(1),),), (Fraction(s, 2),)),
        sign=ALTERNATING,
        denominator=(
            PochTerm(Q, Q, AffineForm((-1,), n)),
            PochTerm(Q, Q, AffineForm((1,), n + t)),
        ),
        bilateral=True,
    )


def vanishing_sum(n: int, t: int, s: int, order: RatLike) -> PuiseuxSeries:
    """
    Evaluate the sum of `vanishing_spec()`, which is identically zero.
    """
    return eval_sumspec(vanishing_spec(n, t, s), order)


def admissible_vanishing_params(
    n_max: int,
    t_max: int,
) -> list[tuple[int, int, int]]:
    """
    All (n, t, s) with 1 <= n <= n_max, 0 <= t <= t_max and odd s in
    [-1, 2t + 1].
    """

    return [
        (n, t, s)
        for n in range(1, n_max + 1)
        for t in range(t_max + 1)
        for s in range(-1, 2 * t + 2, 2)
    ]


@dataclass
class VanishingResult:
    n: int
    t: int
    s: int
    vanishes: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "t": self.t,
            "s": self.s,
            "verdict": "pass" if self.vanishes else "fail",
        }


def _check_vanishing(
    params: tuple[int, int, int],
    order: Fraction,
) -> VanishingResult:
    n, t, s = params
    value = vanishing_sum(n, t, s, order)
    return VanishingResult(n, t, s, value.is_zero())


def check_vanishing_grid(
    n_max: int,
    t_max: int,
    order: RatLike,
    jobs: int | None = 1,
) -> list[VanishingResult]:
    """
    Evaluate the vanishing sum for all admissible parameters.

    Args:
        n_max: Largest n.
        t_max: Largest t.
        order: Truncation order N.
        jobs: Number of worker processes.

    Returns:
        One result per (n, t, s), sorted by (n, t, s).
    """

    grid = admissible_vanishing_params(n_max, t_max)
    return parallel_map(
        partial(_check_vanishing, order=as_rat(order)),
        grid,
        jobs=jobs,
    )


# -----------------------------------------------------------------------------
# Finite sums of Gaussian coefficients
# -----------------------------------------------------------------------------

FINITE_IDENTITIES = ("finite-1", "finite-1'", "finite-2", "finite-3")


def _gaussian_sum(
    n: int,
    base_exp: int,
    sign: int,
    weight: int,
) -> PuiseuxSeries:
    """
    sum_i sign^i q^(weight * i) [n, i] in the base q^base_exp.
    """

    base = q_power(base_exp)
    return linear_combine(
        (sign**i, qbinomial(n, i, base).shift(weight * i))
        for i in range(n + 1)
    )


def finite_identity(
    name: str,
    n: int,
) -> tuple[PuiseuxSeries, PuiseuxSeries]:
    """
    Both sides of one of the finite identities

        finite-1:  sum_i q^i [n, i]_(q^2) = (-q; q)_n
        finite-1': sum_i (-1)^i q^i [n, i]_(q^2)
                       = (q^2; q^2)_n / (-q; -q)_n
        finite-2:  sum_i (-1)^i [n, i] = (q; q^2)_k if n = 2k, else 0
        finite-3:  sum_i (-1)^i q^i [n, i] = (q; q^2)_(ceil(n / 2))

    where [n, i] is the Gaussian coefficient in base q. Both sides are
    polynomials; they are returned exactly (finite-1' to a sufficient
    order, because it involves a division).
    """

    if n < 0:
        raise InvalidParams(f"Need n >= 0, got n={n}!")

    minus_q = q_power(1, sign=-1)
    match name:
        case "finite-1":
            lhs = _gaussian_sum(n, 2, 1, 1)
            rhs = poch_finite(minus_q, Q, n)
        case "finite-1'":
            # Both sides are polynomials of degree at most n^2 + n
            bound = n * n + n + 1
            lhs = _gaussian_sum(n, 2, -1, 1).truncate(bound)
            rhs = (
                poch_finite(q_power(2), q_power(2), n)
                * finite_length_reciprocal(n, minus_q, bound, arg=minus_q)
            ).truncate(bound)
        case "finite-2":
            lhs = _gaussian_sum(n, 1, -1, 0)
            if n % 2:
                rhs = zero_series()
            else:
                rhs = poch_finite(Q, q_power(2), n // 2)
        case "finite-3":
            lhs = _gaussian_sum(n, 1, -1, 1)
            rhs = poch_finite(Q, q_power(2), (n + 1) // 2)
        case _:
            raise ValueError(f"Unknown finite identity: {name}!")

    return lhs, rhs


# -----------------------------------------------------------------------------
# Splitting 1 / (q; q)_n into a convolution in base q^2
# -----------------------------------------------------------------------------

SPLITTING_IDENTITIES = ("sum-1", "sum-2", "sum-3")


def splitting_spec(name: str, n: int) -> SumSpec:
    """
    The right-hand side

        sum_{i + j = n} (+/-1) q^(i^2 + j^2 - i/2 + j/2)
            / ((q^2; q^2)_i (q^2; q^2)_j)

    as a sum over i, with sign 1 (sum-1), (-1)^j (sum-2) or (-1)^i
    (sum-3).
    """

    if n < 0:
        raise InvalidParams(f"Need n >= 0, got n={n}!")

    # i^2 + (n - i)^2 - i/2 + (n - i)/2 as a polynomial in i
    exponent = QuadraticForm(
        ((Fraction(4),),),
        (Fraction(-2 * n - 1),),
        Fraction(n * n) + Fraction(n, 2),
    )
    sign: QuadraticForm | None
    match name:
        case "sum-1":
            sign = None
        case "sum-2":
            sign = ALTERNATING.with_constant(n)
        case "sum-3":
            sign = ALTERNATING
        case _:
            raise ValueError(f"Unknown splitting identity: {name}!")

    q2 = q_power(2)
    return SumSpec(
        exponent=exponent,
        sign=sign,
        denominator=(
            PochTerm(q2, q2, AffineForm((1,), 0)),
            PochTerm(q2, q2, AffineForm((-1,), n)),
        ),
    )


def splitting_identity(
    name: str,
    n: int,
    order: RatLike,
) -> tuple[PuiseuxSeries, PuiseuxSeries]:
    """
    Both sides of

        sum-1: q^(n^2 / 2) / (q; q)_n = (see `splitting_spec()`)
        sum-2: (-1)^((n^2 - n) / 2) q^(n^2 / 2) / (-q; -q)_n = ...
        sum-3: (-1)^((n^2 + n) / 2) q^(n^2 / 2) / (-q; -q)_n = ...

    truncated to `order`.
    """

    order = as_rat(order)
    rhs = eval_sumspec(splitting_spec(name, n), order)

    lead = Fraction(n * n, 2)
    match name:
        case "sum-1":
            sign, base = 1, Q
        case "sum-2":
            sign, base = (-1) ** ((n * n - n) // 2), q_power(1, sign=-1)
        case _:
            sign, base = (-1) ** ((n * n + n) // 2), q_power(1, sign=-1)

    if lead > order:
        return zero_series(order), rhs
    tail = finite_length_reciprocal(n, base, order - lead, arg=base)
    lhs = (monomial(sign, lead) * tail).truncate(order)
    return lhs, rhs


def identity_holds(
    sides: tuple[PuiseuxSeries, PuiseuxSeries],
    order: RatLike | None = None,
) -> bool:
    """
    Whether both sides agree up to `order` (default: the smaller of the
    two orders, or exactly if both sides are exact).
    """

    lhs, rhs = sides
    if order is None:
        common = min(lhs.order, rhs.order)
        if common == float("inf"):
            return lhs == rhs
        order = Fraction(common)
    return isinstance(equal_to_order(lhs, rhs, order), Equal)

