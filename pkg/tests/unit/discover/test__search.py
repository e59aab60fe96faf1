"""
Unit tests for `qnahm.discover.search`.
"""

from fractions import Fraction
from pathlib import Path

import pytest
from pydantic import ValidationError

from qnahm.discover.search import (
    Candidate,
    SearchGridConfig,
    Skipped,
    grid_points,
    load_grid,
    run_search,
    screen_spec,
    search_quadruples,
)
from qnahm.nahm.evaluation import eval_nahm
from qnahm.nahm.specs import NahmSpec, quad_matrix
from qnahm.qfactors.products import eval_product
from qnahm.series.puiseux import Equal, equal_to_order

GRID = """
matrices:
  - [[0, 1], [1, 0]]
b_vectors:
  - [1/2, 1/2]
  - [1/2, -1/2]
lattices:
  - [[2, 0], [0, 2]]
shifts:
  - [1, 0]
order: 80
max_period: 24
"""


@pytest.fixture
def grid(tmp_path: Path) -> SearchGridConfig:
    file_path = tmp_path / "grid.yaml"
    file_path.write_text(GRID)
    return load_grid(file_path)


def test__load_grid(grid: SearchGridConfig, tmp_path: Path) -> None:
    """
    Test `load_grid()`.
    """

    # Case 1: Numbers are kept as strings
    assert grid.rank == 2
    assert grid.matrices == [[["0", "1"], ["1", "0"]]]
    assert grid.b_vectors == [["1/2", "1/2"], ["1/2", "-1/2"]]
    assert grid.order == "80"
    assert grid.min_repeats == 3

    # Case 2: An empty file gives an empty grid
    file_path = tmp_path / "empty.yaml"
    file_path.write_text("")
    empty = load_grid(file_path)
    assert empty.rank is None
    assert grid_points(empty) == []


def test__search_grid_config() -> None:
    """
    Test the validation of `SearchGridConfig`.
    """

    # Case 1: Mixed ranks
    with pytest.raises(ValidationError) as e:
        SearchGridConfig.model_validate(
            {"matrices": [[[0, 1], [1, 0]]], "b_vectors": [[1]]}
        )
    assert "Grid mixes different ranks: [1, 2]!" in str(e)

    # Case 2: Too few repeats
    with pytest.raises(ValidationError) as e:
        SearchGridConfig.model_validate({"min_repeats": 2})
    assert "min_repeats" in str(e)

    # Case 3: Unknown keys
    with pytest.raises(ValidationError) as e:
        SearchGridConfig.model_validate({"matrix": [[1]]})
    assert "Extra inputs are not permitted" in str(e)


def test__grid_points() -> None:
    """
    Test `grid_points()`.
    """

    # Case 1: Without shifts, every coset of the lattice is used
    grid = SearchGridConfig.model_validate(
        {
            "matrices": [[[1, 0], [0, 1]]],
            "b_values": [0, "1/2"],
            "b_vectors": [[0, 0]],
            "lattices": [[[2, 0], [0, 2]]],
        }
    )
    specs = grid_points(grid)
    assert len(specs) == 16
    assert len(set(specs)) == 16
    assert {spec.coset.shift for spec in specs} == {
        (0, 0),
        (0, 1),
        (1, 0),
        (1, 1),
    }

    # Case 2: Without lattices, the full lattice is used
    grid = SearchGridConfig.model_validate(
        {"matrices": [[[2]], [[1]]], "b_values": [0]}
    )
    specs = grid_points(grid)
    assert specs == [
        NahmSpec.create(A=[[Fraction(2)]], B=[Fraction(0)]),
        NahmSpec.create(A=[[Fraction(1)]], B=[Fraction(0)]),
    ]


def test__screen_spec() -> None:
    """
    Test `screen_spec()`.
    """

    # Case 1: A candidate
    spec = NahmSpec.create(
        A=quad_matrix(0, 1, 0),
        B=[Fraction(1, 2), Fraction(1, 2)],
        v=[1, 0],
        L=[[2, 0], [0, 2]],
    )
    candidate = screen_spec(spec, 80, max_period=24)
    assert isinstance(candidate, Candidate)
    assert candidate.required_C == Fraction(1, 12)
    assert candidate.orders_matched == 79
    assert candidate.product.monomial_exp == Fraction(1, 2)
    expected = eval_nahm(spec, 40)
    result = eval_product(candidate.product, 40)
    assert equal_to_order(result, expected, 40) == Equal(Fraction(40))

    # Case 2: A product with a transient is not a candidate
    spec = NahmSpec.create(
        A=quad_matrix(0, 1, 0),
        B=[Fraction(1, 2), Fraction(-1, 2)],
        v=[1, 0],
        L=[[2, 0], [0, 2]],
    )
    assert screen_spec(spec, 80, max_period=24) is None

    # Case 3: Divergent specs are skipped
    spec = NahmSpec.create(A=quad_matrix(0, 1, 0), B=[0, 0])
    skipped = screen_spec(spec, 80, max_period=24)
    assert isinstance(skipped, Skipped)
    assert skipped.to_dict()["spec"] == spec.to_dict()

    # Case 4: Too short for the requested periods
    spec = NahmSpec.create(A=[[Fraction(2)]], B=[Fraction(0)])
    skipped = screen_spec(spec, 20, max_period=10)
    assert isinstance(skipped, Skipped)
    assert "are needed for periods up to 10" in skipped.reason


def test__candidate() -> None:
    """
    Test the serialization of `Candidate`.
    """

    spec = NahmSpec.create(A=[[Fraction(2)]], B=[Fraction(0)])
    candidate = screen_spec(spec, 30, max_period=5)
    assert isinstance(candidate, Candidate)
    assert candidate.required_C == Fraction(-1, 60)

    data = candidate.to_dict()
    assert data["required_C"] == "-1/60"
    assert data["orders_matched"] == 30
    assert Candidate.from_dict(data) == candidate


def test__run_search(grid: SearchGridConfig) -> None:
    """
    Test `run_search()` and `search_quadruples()`.
    """

    report = run_search(grid)
    assert report.num_points == 2
    assert report.skipped == []
    assert len(report.candidates) == 1
    candidate = report.candidates[0]
    assert candidate.spec.quad.B == (Fraction(1, 2), Fraction(1, 2))
    assert report.to_dict()["num_points"] == 2
    assert "periodic" in report.to_dict()["criterion"]

    candidates = search_quadruples(grid)
    assert candidates == report.candidates
