"""
Exact evaluation of (partial) Nahm sums and general sums to a given
truncation order.
"""

import itertools
import math
from fractions import Fraction

from qnahm.nahm.enumeration import enumerate_support
from qnahm.nahm.specs import NahmSpec, PochTerm, SumSpec, Vector
from qnahm.qfactors.pochhammer import PochhammerTable
from qnahm.series.kronecker import mul_integer_lists
from qnahm.series.puiseux import PuiseuxSeries, zero_series
from qnahm.series.rationals import RatLike, as_rat

# Integer coefficient lists, grouped by a common rational scale
Accumulator = dict[Fraction, list[int]]

Factor = tuple[PochhammerTable, PochTerm]


def _factor_product(
    factors: list[Factor],
    n: Vector,
    length: int,
) -> tuple[Fraction, list[int]] | None:
    """
    Multiply the expansions of all `factors` at the index vector n.

    Returns:
        A pair (scale, coeffs), or None if one of the denominators has
        negative length (in which case the term vanishes).
    """

    scale = Fraction(1)
    result: list[int] | None = None
    for table, term in factors:
        k = term.length(n)
        if k < 0:
            if table.reciprocal:
                return None
            raise ValueError(
                f"Numerator ({term.arg}; {term.base})_l has negative "
                f"length l={k} at n={n}!"
            )
        factor_scale, coeffs = table.get(k)
        scale *= factor_scale
        if result is None:
            result = coeffs[:length]
        else:
            result = mul_integer_lists(result, coeffs, length)
    if result is None:
        result = [1] if length > 0 else []
    return scale, result


def _add_into(
    target: Accumulator,
    scale: Fraction,
    coeffs: list[int],
    offset: int,
    width: int,
    sign: int = 1,
) -> None:
    values = target.setdefault(scale, [0] * width)
    for k, c in enumerate(coeffs):
        if c:
            values[offset + k] += sign * c


def eval_sumspec(spec: SumSpec, order: RatLike) -> PuiseuxSeries:
    """
    Evaluate a general sum exactly up to the truncation order.

    Args:
        spec: The sum to evaluate.
        order: Truncation order N (in q-units).

    Returns:
        The sum as a series with order N.

    Raises:
        DivergentSpec: If the sum does not converge (as a formal series).
    """

    order = as_rat(order)
    support = enumerate_support(spec, order)
    if not support:
        return zero_series(order)

    # All exponents live on the lattice (1 / denom) * Z
    denom = spec.lattice()
    top = math.floor(order * denom)
    exponents = {}
    for n in support:
        value = spec.exponent(n) * denom
        assert value.denominator == 1
        exponents[n] = value.numerator
    lo = min(exponents.values())
    width = top - lo + 1

    # One table of expansions for each distinct Pochhammer symbol
    tables: dict[tuple[object, ...], PochhammerTable] = {}

    def table_for(term: PochTerm, reciprocal: bool) -> PochhammerTable:
        key = (term.arg, term.base, reciprocal)
        if key not in tables:
            tables[key] = PochhammerTable(
                term.arg, term.base, denom, width - 1, reciprocal
            )
        return tables[key]

    factors = [(table_for(t, False), t) for t in spec.numerator]
    factors += [(table_for(t, True), t) for t in spec.denominator]

    # Factors that are constant along a row are applied once per row
    rows = [support]
    outer: list[Factor] = []
    inner = factors
    if spec.rank == 2:
        outer = [f for f in factors if not f[1].length.depends_on(1)]
        inner = [f for f in factors if f[1].length.depends_on(1)]
        grouped = itertools.groupby(support, key=lambda n: n[0])
        rows = [list(points) for _, points in grouped]

    total: Accumulator = {}
    for points in rows:
        row_lo = min(exponents[n] for n in points)
        row_width = top - row_lo + 1

        # Sum up the row without the outer factors
        row_sum: Accumulator = {}
        for n in points:
            offset = exponents[n] - row_lo
            product = _factor_product(inner, n, row_width - offset)
            if product is None or product[0] == 0:
                continue
            scale, coeffs = product
            sign = spec.sign_at(n) * (1 if scale > 0 else -1)
            _add_into(row_sum, abs(scale), coeffs, offset, row_width, sign)

        outer_product = _factor_product(outer, points[0], row_width)
        if outer_product is None or outer_product[0] == 0:
            continue
        outer_scale, outer_coeffs = outer_product
        for scale, values in row_sum.items():
            if outer:
                values = mul_integer_lists(values, outer_coeffs, row_width)
            _add_into(
                total, scale * outer_scale, values, row_lo - lo, width
            )

    coefficients = [Fraction(0)] * width
    for scale, values in total.items():
        for k, c in enumerate(values):
            if c:
                coefficients[k] += scale * c
    return PuiseuxSeries(coefficients, lo, denom, order)


def eval_nahm(spec: NahmSpec, order: RatLike) -> PuiseuxSeries:
    """
    Evaluate the partial Nahm sum

        sum_{n in v + L, n >= 0} q^(1/2 n^T A n + n^T B + C)
            / ((q; q)_(n_1) ... (q; q)_(n_r))

    exactly up to the truncation order.
    """
    return eval_sumspec(spec.to_sumspec(), order)
