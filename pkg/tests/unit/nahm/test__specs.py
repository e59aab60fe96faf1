"""
Unit tests for `qnahm.nahm.specs`.
"""

from fractions import Fraction

import pytest

from qnahm.nahm.specs import (
    AffineForm,
    LatticeCoset,
    NahmSpec,
    PochTerm,
    QuadExpr,
    QuadraticForm,
    SumSpec,
    diagonal_coset,
    full_lattice,
    quad_matrix,
)
from qnahm.qfactors.monomials import Q, q_power


def test__quadratic_form() -> None:
    """
    Test `qnahm.nahm.specs.QuadraticForm`.
    """

    # Case 1: Evaluation of Q(n) = n_1 n_2 + (n_1 + n_2) / 2
    form = QuadraticForm(quad_matrix(0, 1, 0), (Fraction(1, 2),) * 2)
    assert form((1, 0)) == Fraction(1, 2)
    assert form((3, 2)) == Fraction(17, 2)
    assert form.lattice() == 2
    assert form.swapped() == form

    # Case 2: Invalid matrices
    with pytest.raises(ValueError) as value_error:
        QuadraticForm(((1, 2), (3, 1)), (0, 0))  # type: ignore[arg-type]
    assert "A must be symmetric" in str(value_error)
    with pytest.raises(ValueError) as value_error:
        QuadExpr(quad_matrix(0, 0, 0), (Fraction(1),) * 2)
    assert "A must be nonzero" in str(value_error)
    with pytest.raises(ValueError) as value_error:
        QuadExpr(((Fraction(1),) * 3,) * 3, (Fraction(0),) * 3)
    assert "Only rank one and rank two" in str(value_error)


def test__lattice_coset() -> None:
    """
    Test `qnahm.nahm.specs.LatticeCoset`.
    """

    # Case 1: Index and swapping
    coset = LatticeCoset(((2, 1), (0, 3)), (1, 0))
    assert coset.index == 6
    assert coset.swapped() == LatticeCoset(((3, 0), (1, 2)), (0, 1))
    assert diagonal_coset((2, 2), (1, 0)).basis == ((2, 0), (0, 2))
    assert full_lattice(1).index == 1

    # Case 2: Singular bases
    with pytest.raises(ValueError) as value_error:
        LatticeCoset(((1, 2), (2, 4)), (0, 0))
    assert "nonsingular" in str(value_error)


def test__nahm_spec() -> None:
    """
    Test `qnahm.nahm.specs.NahmSpec`.
    """

    spec = NahmSpec.create(
        A=[[0, 1], [1, 0]],
        B=["1/2", "1/2"],
        C="-5/12",
        v=[1, 0],
        L=[[2, 0], [0, 2]],
    )

    # Case 1: JSON representation
    data = spec.to_dict()
    assert data == {
        "A": [["0", "1"], ["1", "0"]],
        "B": ["1/2", "1/2"],
        "C": "-5/12",
        "v": [1, 0],
        "L": [[2, 0], [0, 2]],
    }
    assert NahmSpec.from_dict(data) == spec

    # Case 2: Constant and swapping
    assert spec.with_constant(0).quad.C == 0
    assert spec.swapped().coset.shift == (0, 1)

    # Case 3: As a general sum with denominators (q; q)_(n_i)
    sumspec = spec.to_sumspec()
    assert sumspec.rank == 2
    assert [t.length for t in sumspec.denominator] == [
        AffineForm((1, 0)),
        AffineForm((0, 1)),
    ]
    assert sumspec.lattice() == 12

    # Case 4: Ranks must agree
    with pytest.raises(ValueError) as value_error:
        NahmSpec.create(A=[[1]], B=[0], v=[0, 0], L=[[1, 0], [0, 1]])
    assert "ranks differ" in str(value_error)


def test__sum_spec() -> None:
    """
    Test the validation and the sign character of `SumSpec`.
    """

    exponent = QuadraticForm(((Fraction(2),),), (Fraction(-1),))
    sign = QuadraticForm(((Fraction(0),),), (Fraction(1),))
    spec = SumSpec(exponent=exponent, sign=sign)
    assert spec.sign_at((3,)) == -1
    assert spec.sign_at((4,)) == 1

    with pytest.raises(ValueError) as value_error:
        SumSpec(exponent=exponent, bilateral=True, coset=full_lattice(2))
    assert "Coset has the wrong rank" in str(value_error)

    with pytest.raises(ValueError) as value_error:
        SumSpec(
            exponent=exponent,
            numerator=(
                PochTerm(q_power(Fraction(-1, 2)), Q, AffineForm.index(0, 1)),
            ),
        )
    assert "non-negative exponent" in str(value_error)

