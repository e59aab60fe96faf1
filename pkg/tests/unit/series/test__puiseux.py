"""
Unit tests for `qnahm.series.puiseux`.
"""

import random
from fractions import Fraction

import pytest

from qnahm.series.puiseux import (
    Equal,
    FirstMismatch,
    InvalidSubstitution,
    NotInvertible,
    OrderExceeded,
    PuiseuxSeries,
    coefficient_at,
    equal_to_order,
    flip_base_sign,
    invert,
    linear_combine,
    monomial,
    mul,
    one,
    substitute_q_power,
    zero_series,
)
from qnahm.series.rationals import INFINITY


def euler_function(order: int) -> PuiseuxSeries:
    """
    (q; q)_inf to the given order via the pentagonal number theorem.
    """

    coeffs = [0] * (order + 1)
    for k in range(-order, order + 1):
        n = k * (3 * k - 1) // 2
        if 0 <= n <= order:
            coeffs[n] += (-1) ** (k % 2)
    return PuiseuxSeries(coeffs, order=order)


def partition_numbers(order: int) -> list[int]:
    counts = [1] + [0] * order
    for part in range(1, order + 1):
        for n in range(part, order + 1):
            counts[n] += counts[n - part]
    return counts


def random_series(rng: random.Random, order: int = 20) -> PuiseuxSeries:
    length = rng.randint(1, 8)
    coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 3))]
    coeffs += [Fraction(rng.randint(-5, 5)) for _ in range(length - 1)]
    if coeffs[0] == 0:
        coeffs[0] = Fraction(1)
    return PuiseuxSeries(
        coeffs,
        lo=rng.randint(0, 3),
        denom=rng.choice([1, 2, 4]),
        order=order,
    )


def test__puiseux_series__normalization() -> None:
    """
    Test the normalization on construction.
    """

    # Case 1: Leading and trailing zeros are stripped
    f = PuiseuxSeries([0, 0, 1, 2, 0], lo=-1)
    assert f.lo == 1
    assert f.coeffs == (1, 2)
    assert f.min_exponent == 1
    assert f.max_exponent == 2

    # Case 2: The lattice is reduced to the minimal denominator
    f = PuiseuxSeries([1, 0, 0, 0, 1], lo=2, denom=4)
    assert f.denom == 2
    assert f.lo == 1
    assert f.coeffs == (1, 0, 1)

    # Case 3: Nothing beyond the order is stored
    f = PuiseuxSeries([1, 1, 1, 1, 1], order=Fraction(5, 2))
    assert f.coeffs == (1, 1, 1)
    assert f.order == Fraction(5, 2)

    # Case 4: The zero series
    assert zero_series(10).is_zero()
    assert zero_series(10).min_exponent == 10
    assert zero_series().max_exponent is None

    # Case 5: Immutability and invalid arguments
    with pytest.raises(AttributeError):
        f.lo = 3
    with pytest.raises(ValueError) as value_error:
        PuiseuxSeries([1], denom=0)
    assert "Lattice denominator must be >= 1" in str(value_error)


def test__puiseux_series__printing() -> None:
    """
    Test `__str__()` and the JSON representation.
    """

    f = PuiseuxSeries([1, -1, 0, 2], lo=-1, denom=2, order=3)
    assert str(f) == "q^(-1/2) - 1 + 2*q + O(q^(3))"
    assert str(zero_series()) == "0"
    assert f.to_dict() == {
        "denom": 2,
        "lo": -1,
        "order": "3",
        "coeffs": ["1", "-1", "0", "2"],
    }
    assert PuiseuxSeries.from_dict(f.to_dict()) == f


def test__shift_scale_truncate() -> None:
    """
    Test `shift()`, `scale()` and `truncate()`.
    """

    f = PuiseuxSeries([1, 1], order=10)

    # Case 1: Shift by a fractional exponent
    g = f.shift(Fraction(-1, 4))
    assert g.min_exponent == Fraction(-1, 4)
    assert g.order == Fraction(39, 4)
    assert g.coefficient_at(Fraction(3, 4)) == 1

    # Case 2: Scaling by zero keeps the order
    assert f.scale(0) == zero_series(10)
    assert (-f).coeffs == (-1, -1)
    assert f.scale(3).integer_coefficients()
    assert not f.scale(Fraction(1, 2)).integer_coefficients()

    # Case 3: Truncation never increases the order
    assert f.truncate(20).order == 10
    assert f.truncate(Fraction(1, 2)).coeffs == (1,)


def test__invert() -> None:
    """
    Test `qnahm.series.puiseux.invert()`.
    """

    # Case 1: Geometric series
    g = invert(PuiseuxSeries([1, -1]), order=10)
    assert g.coeffs == (1,) * 11
    assert g.order == 10

    # Case 2: Exact monomials have exact inverses
    g = invert(PuiseuxSeries([2], lo=-2))
    assert g == PuiseuxSeries([Fraction(1, 2)], lo=2)

    # Case 3: 1 / (q; q)_inf gives the partition numbers
    g = invert(euler_function(30))
    assert g.order == 30
    assert list(g.coeffs) == partition_numbers(30)
    assert coefficient_at(g, 4) == 5

    # Case 4: Two-sided inverse to the full order (Laurent offset)
    f = PuiseuxSeries([3, 1, 0, -2], lo=-2, denom=2, order=10)
    g = invert(f)
    assert g.min_exponent == 1
    assert isinstance(equal_to_order(f * g, one(), g.order - 1), Equal)

    # Case 5: Errors
    with pytest.raises(NotInvertible):
        invert(zero_series(10))
    with pytest.raises(ValueError) as value_error:
        invert(PuiseuxSeries([1, -1]))
    assert "requires an explicit `order`" in str(value_error)


def test__substitute_q_power() -> None:
    """
    Test `qnahm.series.puiseux.substitute_q_power()`.
    """

    f = PuiseuxSeries([1, 1])

    # Case 1: q -> q^2 and q -> q^(1/2)
    assert substitute_q_power(f, 2) == PuiseuxSeries([1, 0, 1])
    assert substitute_q_power(f, Fraction(1, 2)) == PuiseuxSeries(
        [1, 1], denom=2
    )

    # Case 2: The order is scaled, too, and k -> 1/k undoes it
    g = PuiseuxSeries([1, -2, 0, 5], lo=-1, denom=3, order=7)
    h = substitute_q_power(g, Fraction(3, 2))
    assert h.order == Fraction(21, 2)
    assert substitute_q_power(h, Fraction(2, 3)) == g

    # Case 3: Invalid exponent
    with pytest.raises(InvalidSubstitution) as e:
        substitute_q_power(f, 0)
    assert "Exponent must be positive" in str(e)


def test__flip_base_sign() -> None:
    """
    Test `qnahm.series.puiseux.flip_base_sign()`.
    """

    # Case 1: 1 + x + x^2 -> 1 - x + x^2
    assert flip_base_sign(PuiseuxSeries([1, 1, 1])) == PuiseuxSeries(
        [1, -1, 1]
    )

    # Case 2: Even series are unchanged
    even = PuiseuxSeries([1, 0, 1, 0, 3])
    assert flip_base_sign(even) == even

    # Case 3: Involution (on a finer lattice, too)
    f = PuiseuxSeries([1, 2, 3, 4], lo=-1, denom=2, order=5)
    assert flip_base_sign(flip_base_sign(f)) == f
    assert flip_base_sign(flip_base_sign(f, 4), 4) == f


def test__coefficient_at() -> None:
    """
    Test `qnahm.series.puiseux.coefficient_at()`.
    """

    f = PuiseuxSeries([1, 0, 0, 0, 1], lo=-1, denom=4, order=10)

    # Case 1: On and off the lattice
    assert coefficient_at(f, Fraction(-1, 4)) == 1
    assert coefficient_at(f, Fraction(3, 4)) == 1
    assert coefficient_at(f, Fraction(1, 3)) == 0
    assert coefficient_at(f, 5) == 0

    # Case 2: Beyond the order
    with pytest.raises(OrderExceeded) as e:
        coefficient_at(f, 11)
    assert "exceeds the order" in str(e)


def test__equal_to_order() -> None:
    """
    Test `qnahm.series.puiseux.equal_to_order()`.
    """

    f = PuiseuxSeries([1, 1])
    g = PuiseuxSeries([1, 1, 0, 1])

    # Case 1: Equal series
    assert equal_to_order(f, f, 50) == Equal(Fraction(50))
    assert equal_to_order(f, g, 2) == Equal(Fraction(2))

    # Case 2: First mismatch
    assert equal_to_order(f, g, 3) == FirstMismatch(Fraction(3), 0, 1)
    assert FirstMismatch(Fraction(3), 0, 1).to_dict() == {
        "exponent": "3",
        "lhs": "0",
        "rhs": "1",
    }

    # Case 3: Mismatch on a finer lattice
    h = f + monomial(2, Fraction(1, 2))
    assert equal_to_order(f, h, 1) == FirstMismatch(Fraction(1, 2), 0, 2)

    # Case 4: Beyond the order of one of the series
    with pytest.raises(OrderExceeded) as e:
        equal_to_order(f, PuiseuxSeries([1], order=5), 6)
    assert "right series is only known to 5" in str(e)


def test__linear_combine() -> None:
    """
    Test `qnahm.series.puiseux.linear_combine()`.
    """

    f = PuiseuxSeries([1, 1], order=10)
    g = PuiseuxSeries([1, -1], denom=2, order=4)

    # Case 1: (f + g) / 2 on the common lattice, with the smaller order
    h = linear_combine([(Fraction(1, 2), f), (Fraction(1, 2), g)])
    assert h.order == 4
    assert h == PuiseuxSeries(
        [1, Fraction(-1, 2), Fraction(1, 2)], denom=2, order=4
    )

    # Case 2: Cancellation
    assert (f - f).is_zero()
    assert linear_combine([]) == zero_series()


def test__ring_axioms() -> None:
    """
    Test associativity, commutativity and distributivity to order 20.
    """

    rng = random.Random(0)
    for _ in range(200):
        f, g, h = (random_series(rng) for _ in range(3))
        assert f * g == g * f
        assert isinstance(equal_to_order((f * g) * h, f * (g * h), 20), Equal)
        assert isinstance(
            equal_to_order(f * (g + h), f * g + f * h, 20),
            Equal,
        )


def test__truncation_consistency() -> None:
    """
    Truncating the factors does not change the product up to the order.
    """

    rng = random.Random(1)
    for _ in range(50):
        f = random_series(rng, order=30)
        g = random_series(rng, order=30)
        N = Fraction(rng.randint(1, 20))
        lhs = mul(f, g).truncate(N)
        rhs = mul(f.truncate(N), g.truncate(N)).truncate(N)
        assert lhs == rhs


def test__pow() -> None:
    """
    Test `PuiseuxSeries.__pow__()`.
    """

    f = PuiseuxSeries([1, 1])
    assert f**3 == PuiseuxSeries([1, 3, 3, 1])
    assert f**0 == one()
    assert PuiseuxSeries([2], lo=1) ** -2 == PuiseuxSeries(
        [Fraction(1, 4)], lo=-2
    )
    assert one(INFINITY).order == INFINITY
