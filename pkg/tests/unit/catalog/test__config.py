"""
Unit tests for `qnahm.catalog.config`.
"""

import pytest
from pydantic import ValidationError

from qnahm.catalog.config import EntryConfig, SumConfig, TermConfig


def test__sum_config() -> None:
    """
    Test `qnahm.catalog.config.SumConfig`.
    """

    # Case 1: Numbers are kept as strings
    config = SumConfig.model_validate(
        {"exponent": 0, "denominator": ["(q;q)_{n}"]}
    )
    assert config.exponent == "0"
    assert config.indices == ["n"]

    # Case 2: Invalid indices
    for indices in (["i", "j", "k"], ["i", "i"], ["q"]):
        with pytest.raises(ValidationError):
            SumConfig(indices=indices, exponent="0")

    # Case 3: Unknown keys
    with pytest.raises(ValidationError) as e:
        SumConfig.model_validate({"exponent": "0", "denominators": []})
    assert "Extra inputs are not permitted" in str(e)


def test__term_config() -> None:
    """
    Test `qnahm.catalog.config.TermConfig`.
    """

    assert TermConfig().weight == "1"
    with pytest.raises(ValidationError) as e:
        TermConfig.model_validate(
            {
                "sum": {"exponent": "n^2"},
                "nahm": {"A": [[2]], "B": [0]},
            }
        )
    assert "not both" in str(e)


def test__entry_config() -> None:
    """
    Test `qnahm.catalog.config.EntryConfig`.
    """

    rhs = [{"product": "1/($z;q)_inf"}]
    lhs = [{"sum": {"exponent": "0", "powers": {"n": "$z"}}}]

    # Case 1: A parameterized entry
    config = EntryConfig.model_validate(
        {
            "id": "euler",
            "status": "parameterized",
            "params": ["z"],
            "samples": [{"z": "q"}],
            "lhs": lhs,
            "rhs": rhs,
        }
    )
    assert config.samples == [{"z": "q"}]

    # Case 2: Parameters need the status "parameterized" and samples
    invalid = [
        {"params": ["z"], "samples": [{"z": "q"}]},
        {"status": "parameterized", "params": ["z"]},
        {"status": "parameterized", "params": ["z"], "samples": [{"a": 1}]},
        {"status": "unknown"},
    ]
    for extra in invalid:
        with pytest.raises(ValidationError):
            EntryConfig.model_validate(
                {"id": "euler", "lhs": lhs, "rhs": rhs, **extra}
            )
