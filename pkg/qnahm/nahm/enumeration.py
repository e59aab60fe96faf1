"""
Enumerate the index vectors n that contribute to a sum up to a given
truncation order N.

Every term of a `SumSpec` is +/- q^Q(n) times Pochhammer factors whose
expansions start with a nonzero constant, so exactly the points with
Q(n) <= N contribute below N. The bounds on these points are derived
row by row from exact rational arithmetic:

    - rank one: Q is a quadratic in n, and the sublevel set Q <= N is
      an interval (or a finite range cut out by the denominators);
    - rank two: for fixed n_1, Q is a quadratic in n_2 with leading
      coefficient A_22 / 2. Each row is an interval, and the outer loop
      stops once a lower bound for the row minimum (the "envelope")
      exceeds N and keeps growing.

Anything that cannot be shown to converge this way is rejected with a
`DivergentSpec` error instead of being truncated silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from qnahm.nahm.lattice import CosetForm, coset_form
from qnahm.nahm.specs import (
    NahmSpec,
    QuadraticForm,
    SumSpec,
    Vector,
    full_lattice,
)
from qnahm.series.rationals import RatLike, as_rat, format_rat

Bound = int | None


class DivergentSpec(ValueError):
    pass


@dataclass(frozen=True)
class Quadratic:
    """
    The univariate polynomial c2 * n^2 + c1 * n + c0.
    """

    c2: Fraction
    c1: Fraction
    c0: Fraction

    def __call__(self, n: int) -> Fraction:
        return (self.c2 * n + self.c1) * n + self.c0

    def grows_right(self) -> bool:
        return self.c2 > 0 or (self.c2 == 0 and self.c1 > 0)

    def grows_left(self) -> bool:
        return self.c2 > 0 or (self.c2 == 0 and self.c1 < 0)

    def argmin(self, lo: Bound, hi: Bound) -> int:
        """
        An integer minimizer on [lo, hi] (the polynomial must be convex
        and bounded below on this range).
        """

        if self.c2 > 0:
            vertex = -self.c1 / (2 * self.c2)
            candidates = {
                _clamp(math.floor(vertex), lo, hi),
                _clamp(math.ceil(vertex), lo, hi),
            }
            return min(candidates, key=lambda n: (self(n), n))
        if self.c1 > 0 and lo is not None:
            return lo
        if self.c1 < 0 and hi is not None:
            return hi
        if self.c1 == 0:
            return _clamp(0, lo, hi)
        raise DivergentSpec(f"{self} is unbounded below!")

    def sublevel(
        self,
        bound: Fraction,
        lo: Bound,
        hi: Bound,
    ) -> tuple[int, int] | None:
        """
        The integer interval of n in [lo, hi] with value <= bound (for a
        convex polynomial that grows in every unbounded direction).
        """

        center = self.argmin(lo, hi)
        if self(center) > bound:
            return None
        right = _last_true(lambda n: self(n) <= bound, center, hi)
        left = -_last_true(
            lambda n: self(-n) <= bound,
            -center,
            None if lo is None else -lo,
        )
        return left, right

    def __str__(self) -> str:
        return (
            f"{format_rat(self.c2)}*n^2 + {format_rat(self.c1)}*n + "
            f"{format_rat(self.c0)}"
        )


def _clamp(n: int, lo: Bound, hi: Bound) -> int:
    if lo is not None:
        n = max(n, lo)
    if hi is not None:
        n = min(n, hi)
    return n


def _last_true(pred: Callable[[int], bool], start: int, limit: Bound) -> int:
    """
    Largest n in [start, limit] with pred(n), where pred(start) holds
    and pred is monotone (true up to some point, false afterwards).
    """

    good = start
    step = 1
    while True:
        probe = good + step
        if limit is not None:
            probe = min(probe, limit)
        if probe <= good:
            return good
        if not pred(probe):
            break
        good = probe
        step *= 2

    # Binary search between the last success and the first failure
    bad = probe
    while bad - good > 1:
        middle = (good + bad) // 2
        if pred(middle):
            good = middle
        else:
            bad = middle
    return good


# -----------------------------------------------------------------------------
# Index bounds from the denominators
# -----------------------------------------------------------------------------


def index_bounds(spec: SumSpec) -> tuple[list[Bound], list[Bound]]:
    """
    Lower and upper bounds for each index: n_i >= 0 (unless the sum is
    bilateral), plus the bounds implied by the convention that a
    denominator (a; b)_l with l < 0 makes the term vanish, for all
    denominators whose length depends on a single index.
    """

    lower: list[Bound] = [None if spec.bilateral else 0] * spec.rank
    upper: list[Bound] = [None] * spec.rank

    for term in spec.denominator:
        used = [i for i, k in enumerate(term.length.coeffs) if k != 0]
        if len(used) != 1:
            continue
        i = used[0]
        k = term.length.coeffs[i]
        const = term.length.const

        # Solve k * n_i + const >= 0
        if k > 0:
            bound = -(const // k)
            current = lower[i]
            lower[i] = bound if current is None else max(current, bound)
        else:
            bound = const // (-k)
            current = upper[i]
            upper[i] = bound if current is None else min(current, bound)

    return lower, upper


def _denominators_vanish(spec: SumSpec, n: Vector) -> bool:
    return any(term.length(n) < 0 for term in spec.denominator)


# -----------------------------------------------------------------------------
# Rank one
# -----------------------------------------------------------------------------


def _enumerate_rank1(spec: SumSpec, order: Fraction) -> list[Vector]:

    form = coset_form(spec.coset or full_lattice(1))
    (lo,), (hi,) = index_bounds(spec)
    if lo is not None and hi is not None and lo > hi:
        return []

    Q = spec.exponent
    poly = Quadratic(Q.A[0][0] / 2, Q.B[0], Q.C)

    # A finite range needs no convergence argument
    if lo is not None and hi is not None:
        return [(n,) for n in form.rows(lo, hi) if poly(n) <= order]

    if hi is None and not poly.grows_right():
        raise DivergentSpec(f"Exponent {poly} does not grow as n -> inf!")
    if lo is None and not poly.grows_left():
        raise DivergentSpec(f"Exponent {poly} does not grow as n -> -inf!")

    interval = poly.sublevel(order, lo, hi)
    if interval is None:
        return []
    return [(n,) for n in form.rows(*interval)]


# -----------------------------------------------------------------------------
# Rank two
# -----------------------------------------------------------------------------


def _row_polynomial(Q: QuadraticForm, n1: int) -> Quadratic:
    """
    Q(n_1, n_2) as a polynomial in n_2 for fixed n_1.
    """
    (a, b), (_, c) = Q.A
    B1, B2 = Q.B
    return Quadratic(c / 2, b * n1 + B2, a * n1 * n1 / 2 + B1 * n1 + Q.C)


def _outer_cutoff(
    Q: QuadraticForm,
    form: CosetForm,
    lo1: int,
    order: Fraction,
) -> int:
    """
    An n_1 beyond which no row (with unbounded n_2 >= 0) has a point
    with Q <= order.
    """

    (a, b), (_, c) = Q.A
    B1, B2 = Q.B

    if c < 0:
        raise DivergentSpec("Rows are unbounded below (A_22 < 0)!")

    # Find a quadratic lower bound ("tail") for the row minimum over real
    # n_2 >= 0 that is valid for all n_1 >= start
    if c == 0:
        if b < 0:
            raise DivergentSpec(
                "The n_2-slope A_12 * n_1 + B_2 becomes negative!"
            )
        first = form.first_row(lo1)
        if b * first + B2 <= 0:
            raise DivergentSpec(
                f"Row n_1={first} has a non-positive n_2-slope!"
            )
        tail = Quadratic(a / 2, B1, Q.C)
        start = lo1
    elif b > 0 or (b == 0 and B2 >= 0):
        # Eventually the row vertex lies left of n_2 = 0
        tail = Quadratic(a / 2, B1, Q.C)
        start = lo1 if b == 0 else max(lo1, math.ceil(-B2 / b))
    else:
        # Unconstrained row minimum Q(n_1, 0) - s(n_1)^2 / (2 c)
        tail = Quadratic(
            a / 2 - b * b / (2 * c),
            B1 - b * B2 / c,
            Q.C - B2 * B2 / (2 * c),
        )
        start = lo1

    if not tail.grows_right():
        raise DivergentSpec(f"Row minimum {tail} does not grow with n_1!")

    center = tail.argmin(start, None)
    if tail(center) > order:
        return start - 1
    return _last_true(lambda n: tail(n) <= order, center, None)


def _enumerate_rows(
    Q: QuadraticForm,
    form: CosetForm,
    lower: list[Bound],
    upper: list[Bound],
    order: Fraction,
) -> list[Vector]:
    """
    Enumerate with n_1 as the outer index.
    """

    lo1, lo2 = lower
    hi1, hi2 = upper
    assert lo1 is not None and lo2 is not None
    if (hi1 is not None and lo1 > hi1) or (hi2 is not None and lo2 > hi2):
        return []

    c = Q.A[1][1]
    if hi2 is None and c < 0:
        raise DivergentSpec("Rows are unbounded below (A_22 < 0)!")
    stop = _outer_cutoff(Q, form, lo1, order) if hi1 is None else hi1

    points: list[Vector] = []
    for n1 in form.rows(lo1, stop):
        row = _row_polynomial(Q, n1)
        if hi2 is not None:
            columns = [
                n2 for n2 in form.columns(n1, lo2, hi2) if row(n2) <= order
            ]
        else:
            if c == 0 and row.c1 <= 0:
                raise DivergentSpec(
                    f"Row n_1={n1} has a non-positive n_2-slope!"
                )
            interval = row.sublevel(order, lo2, None)
            if interval is None:
                continue
            columns = list(form.columns(n1, *interval))
        points.extend((n1, n2) for n2 in columns)
    return points


def _enumerate_rank2(spec: SumSpec, order: Fraction) -> list[Vector]:

    coset = spec.coset or full_lattice(2)
    lower, upper = index_bounds(spec)

    # Loop over the bounded index on the outside
    if upper[0] is None and upper[1] is not None:
        points = _enumerate_rows(
            spec.exponent.swapped(),
            coset_form(coset.swapped()),
            lower[::-1],
            upper[::-1],
            order,
        )
        return sorted((n2, n1) for n1, n2 in points)

    return _enumerate_rows(
        spec.exponent, coset_form(coset), lower, upper, order
    )


# -----------------------------------------------------------------------------
# Public interface
# -----------------------------------------------------------------------------


def enumerate_support(
    spec: NahmSpec | SumSpec,
    order: RatLike,
) -> list[Vector]:
    """
    All index vectors that contribute to the sum below the truncation
    order, in ascending lexicographic order.

    Args:
        spec: The sum (a Nahm sum is converted to a `SumSpec`).
        order: Truncation order N (in q-units).

    Returns:
        All n in the coset (with n >= 0, unless the sum is bilateral)
        with Q(n) <= N whose denominators do not vanish.

    Raises:
        DivergentSpec: If convergence cannot be established.
    """

    if isinstance(spec, NahmSpec):
        spec = spec.to_sumspec()
    order = as_rat(order)

    if spec.rank == 1:
        points = _enumerate_rank1(spec, order)
    else:
        points = _enumerate_rank2(spec, order)
    return [n for n in points if not _denominators_vanish(spec, n)]
