"""
Completion exponents: the power q^w that turns a product of Pochhammer
symbols into a quotient of (generalized) Dedekind eta functions, and
the scalar C that makes a partial Nahm sum equal to such a quotient.

A factor (q^a; q^m)_inf^e contributes e * (m / 4) * P2(a / m) to w,
where P2(x) = {x}^2 - {x} + 1/6 is the second periodic Bernoulli
polynomial. For J_m = (q^m; q^m)_inf this gives m / 24, as in
eta(m tau) = q^(m / 24) J_m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Any, Sequence

from qnahm.catalog.entries import IdentityEntry, Quadruple
from qnahm.nahm.enumeration import DivergentSpec
from qnahm.nahm.evaluation import eval_nahm
from qnahm.nahm.specs import NahmSpec
from qnahm.qfactors.pochhammer import DivergentProduct
from qnahm.qfactors.products import ProductSpec, eval_product
from qnahm.series.puiseux import Equal, equal_to_order
from qnahm.series.rationals import RatLike, as_rat, format_rat
from qnahm.utils.multiproc import parallel_map

DEFAULT_CHECK_ORDER = Fraction(30)


class NotAnIdentity(ValueError):
    pass


def P2(x: RatLike) -> Fraction:
    """
    Second periodic Bernoulli polynomial {x}^2 - {x} + 1/6.
    """

    x = as_rat(x)
    frac = x - math.floor(x)
    return frac * frac - frac + Fraction(1, 6)


def eta_weight_exponent(product: ProductSpec) -> Fraction:
    """
    The exponent w such that q^w * P is a quotient of (generalized)
    eta functions, where P is the product without its constant and
    without its monomial q^mu.

    Signed factors are first rewritten as positive ones, e.g.,
    (-q^a; q^m)_inf = (q^(2a); q^(2m))_inf / (q^a; q^m)_inf. The result
    is additive over products and changes sign under inversion.
    """

    total = Fraction(0)
    for f in product.normalized().factors:
        a, m = f.arg.exp, f.base.exp
        total += f.power * m / 4 * P2(a / m)
    return total


def modular_weight(product: ProductSpec) -> Fraction:
    """
    The weight of the eta quotient: 1/2 for every factor J_m (and 0 for
    the generalized eta functions, which come in pairs a, m - a).
    """

    total = 0
    for f in product.normalized().factors:
        if (f.arg.exp / f.base.exp).denominator == 1:
            total += f.power
    return Fraction(total, 2)


def required_C(
    spec: NahmSpec,
    product: ProductSpec,
    order: RatLike = DEFAULT_CHECK_ORDER,
) -> Fraction:
    """
    The unique C for which q^C times the partial Nahm sum (A, B, 0, v+L)
    is the eta quotient behind `product`.

    Args:
        spec: The partial Nahm sum; its C is ignored (set to zero).
        product: A product with f_{A,B,0,v+L} = q^delta * product.
        order: Order up to which the identity is checked (q-units).

    Returns:
        C = eta_weight_exponent(product) - mu - delta, where mu is the
        monomial exponent of the product.

    Raises:
        NotAnIdentity: If the two sides differ up to `order`.
    """

    order = as_rat(order)
    nahm = eval_nahm(spec.with_constant(0), order)
    if nahm.is_zero():
        raise NotAnIdentity(f"The Nahm sum vanishes up to q^{order}!")

    delta = Fraction(nahm.min_exponent) - product.monomial_exp
    expected = eval_product(product.shifted(delta), order)
    comparison = equal_to_order(nahm, expected, order)
    if not isinstance(comparison, Equal):
        raise NotAnIdentity(
            f"Nahm sum and product differ at "
            f"q^{format_rat(comparison.exponent)}: "
            f"{format_rat(comparison.lhs_coeff)} != "
            f"{format_rat(comparison.rhs_coeff)}!"
        )

    return eta_weight_exponent(product) - product.monomial_exp - delta


# -----------------------------------------------------------------------------
# Cross-check against the printed values in the catalog
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class PrefactorRow:
    """
    The computed and the printed C of one catalog quadruple.
    """

    label: str
    printed_C: Fraction | None
    computed_C: Fraction | None = None
    weight: Fraction | None = None
    error: str | None = None

    @property
    def agrees(self) -> bool | None:
        if self.computed_C is None or self.printed_C is None:
            return None
        return self.computed_C == self.printed_C

    def to_dict(self) -> dict[str, Any]:
        def fmt(value: Fraction | None) -> str | None:
            return None if value is None else format_rat(value)

        result: dict[str, Any] = {
            "id": self.label,
            "printed_C": fmt(self.printed_C),
            "computed_C": fmt(self.computed_C),
            "weight": fmt(self.weight),
            "agrees": self.agrees,
        }
        if self.error is not None:
            result["error"] = self.error
        return result


def quadruple_product(quadruple: Quadruple) -> ProductSpec:
    """
    The product in terms of q (undoing the scaling q -> q^scale).
    """
    return quadruple.product.substituted(1 / quadruple.scale)


def prefactor_row(
    label: str,
    quadruple: Quadruple,
    order: RatLike = DEFAULT_CHECK_ORDER,
) -> PrefactorRow:
    product = quadruple_product(quadruple)
    try:
        computed = required_C(quadruple.spec, product, order)
    except (NotAnIdentity, DivergentSpec, DivergentProduct) as e:
        return PrefactorRow(label, quadruple.printed_C, error=str(e))
    return PrefactorRow(
        label,
        quadruple.printed_C,
        computed_C=computed,
        weight=modular_weight(product),
    )


def _rows_for_entry(
    entry: IdentityEntry,
    order: Fraction,
) -> list[PrefactorRow]:
    rows = []
    for instance in entry.instances:
        if instance.quadruple is not None:
            rows.append(
                prefactor_row(instance.label, instance.quadruple, order)
            )
    return rows


def cross_check(
    entries: Sequence[IdentityEntry],
    order: RatLike = DEFAULT_CHECK_ORDER,
    jobs: int | None = 1,
    show_progress: bool = False,
) -> list[PrefactorRow]:
    """
    Compute C for every quadruple in the catalog and compare it with the
    printed value. Disagreements are reported, not raised.

    Returns:
        One row per quadruple (per sample for parameterized entries),
        sorted by label.
    """

    order = as_rat(order)
    selected = [
        entry
        for entry in entries
        if any(instance.quadruple is not None for instance in entry.instances)
    ]
    nested = parallel_map(
        partial(_rows_for_entry, order=order),
        selected,
        jobs=jobs,
        show_progress=show_progress,
    )
    rows = [row for rows in nested for row in rows]
    rows.sort(key=lambda row: row.label)
    return rows
