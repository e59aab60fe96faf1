"""
Parity dissections of the double sum

    F(u, v) = sum_{i, j >= 0} q^(a i^2 / 2 + b i j + c j^2 / 2) u^i v^j
              / ((q; q)_i (q; q)_j)

with u = +/- q^d and v = +/- q^e. Restricting i and/or j to a residue
class modulo 2 and writing i = 2i' + p (or j = 2j' + p) turns the
restricted sum into a new double sum, which equals a signed average of
F(+/- u, +/- v) times a power of q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction

from qnahm.nahm.evaluation import eval_sumspec
from qnahm.nahm.specs import (
    AffineForm,
    PochTerm,
    QuadraticForm,
    SumSpec,
    zero_form,
)
from qnahm.qfactors.monomials import Q
from qnahm.series.puiseux import PuiseuxSeries, linear_combine
from qnahm.series.rationals import RatLike, as_rat

# Residue of (i, j) modulo 2, or None if the index is not restricted
Parity = tuple[int | None, int | None]

DISSECTION_PATTERNS: dict[str, Parity] = {
    "F-add": (0, None),
    "F-subtract": (1, None),
    "F-add-j": (None, 0),
    "F-subtract-j": (None, 1),
    "F-00": (0, 0),
    "F-01": (0, 1),
    "F-10": (1, 0),
    "F-11": (1, 1),
}


class InvalidShape(ValueError):
    pass


@dataclass(frozen=True)
class FShape:
    """
    The parameters of F(u, v) with u = u_sign * q^d, v = v_sign * q^e
    and an additional overall factor q^C.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction
    u_sign: int = 1
    v_sign: int = 1
    C: Fraction = Fraction(0)


def f_sum(
    a: RatLike,
    b: RatLike,
    c: RatLike,
    d: RatLike = 0,
    e: RatLike = 0,
    u_sign: int = 1,
    v_sign: int = 1,
    C: RatLike = 0,
) -> SumSpec:
    """
    The sum F(u_sign * q^d, v_sign * q^e) times q^C.
    """

    a, b, c = as_rat(a), as_rat(b), as_rat(c)
    return _restricted_sum(
        FShape(a, b, c, as_rat(d), as_rat(e), u_sign, v_sign, as_rat(C)),
        (None, None),
    )[0]


def f_shape(spec: SumSpec) -> FShape:
    """
    Read off the parameters of a sum of the shape F(u, v).

    Raises:
        InvalidShape: If the sum is not of this shape.
    """

    if spec.rank != 2 or spec.bilateral or spec.numerator:
        raise InvalidShape("F(u, v) is a unilateral double sum!")
    if spec.coset is not None and spec.coset.index != 1:
        raise InvalidShape("F(u, v) runs over all i, j >= 0!")

    lengths = sorted(
        (t.length.coeffs, t.length.const)
        for t in spec.denominator
        if t.arg == Q and t.base == Q
    )
    if len(spec.denominator) != 2 or lengths != [((0, 1), 0), ((1, 0), 0)]:
        raise InvalidShape("F(u, v) has denominators (q; q)_i (q; q)_j!")

    u_sign = v_sign = 1
    if spec.sign is not None:
        sign = spec.sign
        if any(x != 0 for row in sign.A for x in row) or sign.C != 0:
            raise InvalidShape("F(u, v) only allows linear sign characters!")
        if any(x.denominator != 1 for x in sign.B):
            raise InvalidShape("Sign exponents must be integers!")
        u_sign = -1 if sign.B[0].numerator % 2 else 1
        v_sign = -1 if sign.B[1].numerator % 2 else 1

    (a, b), (_, c) = spec.exponent.A
    d, e = spec.exponent.B
    return FShape(a, b, c, d, e, u_sign, v_sign, spec.exponent.C)


def _restricted_sum(shape: FShape, parity: Parity) -> tuple[SumSpec, Fraction]:
    """
    The sum over i = m_1 i' + p_1, j = m_2 j' + p_2 (m = 2 for restricted
    indices, else m = 1), written in i' and j', together with the
    constant exponent that has been divided out.
    """

    m1, m2 = (1 if p is None else 2 for p in parity)
    p1, p2 = (p or 0 for p in parity)
    a, b, c, d, e = shape.a, shape.b, shape.c, shape.d, shape.e

    exponent = QuadraticForm(
        A=((a * m1 * m1, b * m1 * m2), (b * m1 * m2, c * m2 * m2)),
        B=(m1 * (a * p1 + b * p2 + d), m2 * (b * p1 + c * p2 + e)),
        C=shape.C,
    )
    shift = a * p1 * p1 / 2 + b * p1 * p2 + c * p2 * p2 / 2 + d * p1 + e * p2

    s1 = 1 if shape.u_sign == -1 else 0
    s2 = 1 if shape.v_sign == -1 else 0
    sign = None
    if s1 or s2:
        sign = QuadraticForm(
            A=zero_form(2).A,
            B=(Fraction(s1 * m1), Fraction(s2 * m2)),
            C=Fraction(s1 * p1 + s2 * p2),
        )

    denominator = (
        PochTerm(Q, Q, AffineForm((m1, 0), p1)),
        PochTerm(Q, Q, AffineForm((0, m2), p2)),
    )
    spec = SumSpec(exponent=exponent, sign=sign, denominator=denominator)
    return spec, shift


@dataclass(frozen=True)
class Dissection:
    """
    An identity lhs = sum_k weight_k * rhs_k between double sums.
    """

    pattern: str
    lhs: SumSpec
    rhs: tuple[tuple[Fraction, SumSpec], ...]

    def evaluate(self, order: RatLike) -> tuple[PuiseuxSeries, PuiseuxSeries]:
        """
        Expand both sides to the given order.
        """

        lhs = eval_sumspec(self.lhs, order)
        rhs = linear_combine(
            (weight, eval_sumspec(spec, order)) for weight, spec in self.rhs
        )
        return lhs, rhs


def dissection_transform(spec: SumSpec, pattern: str) -> Dissection:
    """
    Both sides of one of the parity dissections of F(u, v).

    Args:
        spec: A sum of the shape F(u, v) (see `f_shape()`).
        pattern: One of the keys of `DISSECTION_PATTERNS`.

    Returns:
        The restricted sum (rescaled to start at q^C) and the weighted
        combination of F(+/- u, +/- v) that it equals.

    Raises:
        InvalidShape: If `spec` is not of the shape F(u, v).
    """

    if pattern not in DISSECTION_PATTERNS:
        raise ValueError(f"Unknown dissection pattern: {pattern}!")
    shape = f_shape(spec)
    parity = DISSECTION_PATTERNS[pattern]
    lhs, shift = _restricted_sum(shape, parity)

    # Project onto i = p (mod 2) via 1/2 sum_eps eps^p F(eps u, v)
    choices = [(1,) if p is None else (1, -1) for p in parity]
    rhs = []
    for eps_u, eps_v in itertools.product(*choices):
        weight = Fraction(1, len(choices[0]) * len(choices[1]))
        for eps, p in ((eps_u, parity[0]), (eps_v, parity[1])):
            if eps == -1 and p == 1:
                weight = -weight
        flipped = replace(
            shape,
            u_sign=shape.u_sign * eps_u,
            v_sign=shape.v_sign * eps_v,
            C=shape.C - shift,
        )
        rhs.append((weight, _restricted_sum(flipped, (None, None))[0]))

    return Dissection(pattern, lhs, tuple(rhs))
