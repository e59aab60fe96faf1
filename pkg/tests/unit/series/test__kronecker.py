"""
Unit tests for `qnahm.series.kronecker`.
"""

import random
from fractions import Fraction

import pytest

from qnahm.series.kronecker import (
    clear_denominators,
    inverse_rational_list,
    mul_integer_lists,
    mul_rational_lists,
    mul_schoolbook,
)


def test__mul_schoolbook() -> None:
    """
    Test `qnahm.series.kronecker.mul_schoolbook()`.
    """

    # Case 1: (1 - x) * (1 + x + x^2) = 1 - x^3
    assert mul_schoolbook([1, -1], [1, 1, 1]) == [1, 0, 0, -1]

    # Case 2: Truncation
    assert mul_schoolbook([1, -1], [1, 1, 1], length=2) == [1, 0]
    assert mul_schoolbook([1], [1], length=0) == []


def test__mul_integer_lists() -> None:
    """
    Test that the Kronecker product agrees with the schoolbook product.
    """

    rng = random.Random(42)
    for _ in range(50):
        n = rng.randint(1, 80)
        m = rng.randint(1, 80)
        bound = rng.choice([1, 10, 10**6, 10**30])
        a = [rng.randint(-bound, bound) for _ in range(n)]
        b = [rng.randint(-bound, bound) for _ in range(m)]
        assert mul_integer_lists(a, b) == mul_schoolbook(a, b)
        length = rng.randint(1, n + m)
        assert mul_integer_lists(a, b, length) == mul_schoolbook(
            a, b, length
        )

    # Case: Zero inputs
    assert mul_integer_lists([], [1, 2]) == []
    assert mul_integer_lists([0] * 20, [1] * 20) == [0] * 39


def test__mul_rational_lists() -> None:
    """
    Test `qnahm.series.kronecker.mul_rational_lists()`.
    """

    a = [Fraction(1, 2), Fraction(-1, 3)]
    b = [Fraction(2), Fraction(3, 4)]
    assert mul_rational_lists(a, b) == [
        Fraction(1),
        Fraction(3, 8) - Fraction(2, 3),
        Fraction(-1, 4),
    ]
    assert clear_denominators(a) == ([3, -2], 6)


def test__inverse_rational_list() -> None:
    """
    Test `qnahm.series.kronecker.inverse_rational_list()`.
    """

    # Case 1: 1 / (1 - x) = 1 + x + x^2 + ...
    ones = inverse_rational_list([Fraction(1), Fraction(-1)], 25)
    assert ones == [Fraction(1)] * 25

    # Case 2: Product with the input is 1
    u = [Fraction(2), Fraction(1, 3), Fraction(-5), Fraction(7, 2)]
    g = inverse_rational_list(u, 30)
    assert mul_rational_lists(u, g, 30) == [Fraction(1)] + [Fraction(0)] * 29

    # Case 3: Zero constant term
    with pytest.raises(ZeroDivisionError) as e:
        inverse_rational_list([Fraction(0), Fraction(1)], 5)
    assert "Constant term must be nonzero" in str(e)
