"""
Unit tests for `qnahm.nahm.lattice`.
"""

import itertools

import pytest

from qnahm.nahm.lattice import (
    coset_form,
    coset_representatives,
    extended_gcd,
    iter_box,
)
from qnahm.nahm.specs import LatticeCoset, diagonal_coset

BASES = [
    ((1, 0), (0, 1)),
    ((2, 0), (0, 2)),
    ((1, 1), (-1, 1)),
    ((2, 1), (0, 3)),
    ((3, -1), (1, 2)),
    ((4, 2), (2, 4)),
]


def in_lattice(basis: tuple[tuple[int, ...], ...], x: int, y: int) -> bool:
    """
    Brute-force membership: solve basis @ k = (x, y) with Cramer's rule.
    """
    (p, r), (s, t) = basis
    det = p * t - r * s
    return (t * x - r * y) % det == 0 and (p * y - s * x) % det == 0


def test__extended_gcd() -> None:
    """
    Test `qnahm.nahm.lattice.extended_gcd()`.
    """

    for a, b in [(240, 46), (-4, 6), (7, 0), (0, -5), (12, -18)]:
        g, x, y = extended_gcd(a, b)
        assert g >= 0
        assert x * a + y * b == g
        assert a % g == 0 and b % g == 0


def test__coset_form() -> None:
    """
    Test `qnahm.nahm.lattice.coset_form()`.
    """

    # Case 1: Diagonal lattice
    form = coset_form(diagonal_coset((2, 3), (1, 2)))
    assert (form.h11, form.h21, form.h22) == (2, 0, 3)
    assert list(form.rows(0, 6)) == [1, 3, 5]
    assert list(form.columns(1, 0, 10)) == [2, 5, 8]
    assert form.first_row(4) == 5

    # Case 2: The lattice of all n with n_1 + n_2 even
    form = coset_form(LatticeCoset(((1, 1), (-1, 1)), (0, 0)))
    assert (form.h11, form.h21, form.h22) == (1, 1, 2)
    assert form.contains((3, 5))
    assert not form.contains((3, 4))

    # Case 3: Rank one
    form = coset_form(diagonal_coset((3,), (2,)))
    assert form.contains((5,))
    assert not form.contains((4,))
    assert list(form.rows(0, 9)) == [2, 5, 8]

    # Case 4: Membership agrees with solving the linear system
    for basis in BASES:
        for shift in [(0, 0), (1, 0), (2, -1)]:
            form = coset_form(LatticeCoset(basis, shift))
            for x, y in itertools.product(range(-6, 7), repeat=2):
                expected = in_lattice(basis, x - shift[0], y - shift[1])
                assert form.contains((x, y)) == expected


@pytest.mark.parametrize("basis", BASES)
def test__coset_representatives(basis: tuple[tuple[int, ...], ...]) -> None:
    """
    Test `qnahm.nahm.lattice.coset_representatives()`.
    """

    cosets = coset_representatives(basis)
    assert len(cosets) == LatticeCoset(basis, (0, 0)).index
    assert [c.shift for c in cosets] == sorted(c.shift for c in cosets)

    # Every point lies in exactly one coset
    forms = [coset_form(coset) for coset in cosets]
    for n in itertools.product(range(-5, 6), repeat=2):
        assert sum(form.contains(n) for form in forms) == 1


def test__iter_box() -> None:
    """
    Test `qnahm.nahm.lattice.iter_box()`.
    """

    assert list(iter_box(diagonal_coset((2,), (1,)), 6)) == [
        (1,),
        (3,),
        (5,),
    ]
    points = list(iter_box(diagonal_coset((2, 2), (1, 0)), 3))
    assert points == [(1, 0), (1, 2), (3, 0), (3, 2)]
