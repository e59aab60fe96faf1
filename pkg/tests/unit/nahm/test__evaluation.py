"""
Unit tests for `qnahm.nahm.evaluation`.
"""

from fractions import Fraction

import pytest

from qnahm.catalog.parsing import parse_product
from qnahm.nahm.evaluation import eval_nahm, eval_sumspec
from qnahm.nahm.lattice import coset_representatives, iter_box
from qnahm.nahm.specs import (
    AffineForm,
    NahmSpec,
    PochTerm,
    QuadraticForm,
    SumSpec,
    quad_matrix,
)
from qnahm.qfactors.monomials import Q, q_power
from qnahm.qfactors.pochhammer import finite_length_reciprocal, poch_finite
from qnahm.qfactors.products import eval_product
from qnahm.series.puiseux import (
    Equal,
    PuiseuxSeries,
    equal_to_order,
    monomial,
    zero_series,
)


def brute_force_nahm(spec: NahmSpec, order: Fraction) -> PuiseuxSeries:
    """
    Sum the terms one by one over a box that contains the support.
    """

    total = zero_series(order)
    for n in iter_box(spec.coset, 30):
        exponent = spec.quad(n)
        if exponent > order:
            continue
        term = monomial(1, exponent)
        for n_i in n:
            term = term * finite_length_reciprocal(n_i, Q, order)
        total = total + term
    return total.truncate(order)


def test__eval_nahm__rogers_ramanujan() -> None:
    """
    sum q^(n^2) / (q; q)_n counts partitions into parts 1, 4 (mod 5).
    """

    f = eval_nahm(NahmSpec.create(A=[[2]], B=[0]), 8)
    assert f == PuiseuxSeries([1, 1, 1, 1, 2, 2, 3, 3, 4], order=8)

    f = eval_nahm(NahmSpec.create(A=[[2]], B=[0]), 60)
    g = eval_product(parse_product("1/(q, q^4; q^5)_inf"), 60)
    assert isinstance(equal_to_order(f, g, 60), Equal)


@pytest.mark.parametrize(
    "A, B, v, L",
    [
        ([[1]], ["1/2"], [0], [[1]]),
        ([[2]], ["-1/2"], [1], [[3]]),
        ([[2, 1], [1, 1]], ["0", "1/2"], [0, 0], [[1, 0], [0, 1]]),
        ([[0, 1], [1, 0]], ["1/2", "1/2"], [1, 0], [[2, 0], [0, 2]]),
        ([[4, -1], [-1, 2]], ["-1", "1"], [1, 1], [[1, 1], [-1, 1]]),
    ],
)
def test__eval_nahm__brute_force(
    A: list[list[int]],
    B: list[str],
    v: list[int],
    L: list[list[int]],
) -> None:
    """
    Compare `eval_nahm()` with a term-by-term summation.
    """

    order = Fraction(12)
    spec = NahmSpec.create(A=A, B=[Fraction(b) for b in B], v=v, L=L)
    assert eval_nahm(spec, order) == brute_force_nahm(spec, order)


def test__eval_nahm__coset_additivity() -> None:
    """
    The sums over all cosets of 2Z x 2Z add up to the full sum.
    """

    order = Fraction(20)
    basis = ((2, 0), (0, 2))
    for A, B in [
        (quad_matrix(2, 1, 1), [Fraction(0), Fraction(1, 2)]),
        (quad_matrix(0, 1, 0), [Fraction(1, 2), Fraction(1, 2)]),
        (quad_matrix(1, Fraction(-1, 2), 1), [Fraction(0), Fraction(0)]),
    ]:
        full = eval_nahm(NahmSpec.create(A=A, B=B), order)
        parts = zero_series(order)
        for coset in coset_representatives(basis):
            spec = NahmSpec.create(A=A, B=B, v=coset.shift, L=coset.basis)
            parts = parts + eval_nahm(spec, order)
        assert parts == full


def test__eval_nahm__symmetries() -> None:
    """
    Test the constant C and the exchange of the two indices.
    """

    spec = NahmSpec.create(
        A=[[0, 1], [1, 0]],
        B=[Fraction(1, 2), Fraction(1, 2)],
        v=[1, 0],
        L=[[2, 0], [0, 2]],
    )
    order = Fraction(30)

    # Case 1: The constant only shifts the series
    C = Fraction(-5, 12)
    f = eval_nahm(spec, order)
    g = eval_nahm(spec.with_constant(C), order)
    assert isinstance(equal_to_order(g, f.shift(C), order + C), Equal)

    # Case 2: Swapping the indices does not change the sum
    assert eval_nahm(spec.swapped(), order) == f

    # Case 3: The sum is q^(1/2) times a product
    product = parse_product("(q^8;q^8)_inf / ((q;q^2)_inf^2 (q^4;q^8)_inf)")
    expected = eval_product(product, order).shift(Fraction(1, 2))
    assert isinstance(equal_to_order(f, expected, order), Equal)


def test__eval_sumspec() -> None:
    """
    Test `qnahm.nahm.evaluation.eval_sumspec()` for general sums.
    """

    order = Fraction(25)

    # Case 1: Euler: sum (-1)^n q^(n (n - 1) / 2) z^n / (q; q)_n = (z; q)_inf
    # with z = q^(1/2)
    spec = SumSpec(
        exponent=QuadraticForm(((Fraction(1),),), (Fraction(0),)),
        sign=QuadraticForm(((Fraction(0),),), (Fraction(1),)),
        denominator=(PochTerm(Q, Q, AffineForm((1,))),),
    )
    expected = eval_product(parse_product("(q^{1/2}; q)_inf"), order)
    assert isinstance(
        equal_to_order(eval_sumspec(spec, order), expected, order), Equal
    )

    # Case 2: A numerator that cancels a denominator on 0 <= k <= 3
    spec = SumSpec(
        exponent=QuadraticForm(((Fraction(0),),), (Fraction(1),)),
        numerator=(PochTerm(Q, Q, AffineForm((-1,), 3)),),
        denominator=(
            PochTerm(Q, Q, AffineForm((1,))),
            PochTerm(Q, Q, AffineForm((-1,), 3)),
        ),
    )
    expected = zero_series(order)
    for k in range(4):
        expected = expected + monomial(1, k) * finite_length_reciprocal(
            k, Q, order
        )
    assert eval_sumspec(spec, order) == expected.truncate(order)

    # Case 3: Signed numerators: sum q^n (-q; q)_n / (q; q)_n
    spec = SumSpec(
        exponent=QuadraticForm(((Fraction(0),),), (Fraction(1),)),
        numerator=(PochTerm(-Q, Q, AffineForm((1,))),),
        denominator=(PochTerm(Q, Q, AffineForm((1,))),),
    )
    expected = zero_series(order)
    for n in range(26):
        term = poch_finite(-Q, Q, n, order) * finite_length_reciprocal(
            n, Q, order
        )
        expected = expected + term * monomial(1, n)
    assert eval_sumspec(spec, order) == expected.truncate(order)

    # Case 4: Empty support
    spec = SumSpec(
        exponent=QuadraticForm(
            ((Fraction(2),),), (Fraction(0),), Fraction(50)
        ),
        denominator=(PochTerm(q_power(2), Q, AffineForm((1,))),),
    )
    assert eval_sumspec(spec, order) == zero_series(order)
