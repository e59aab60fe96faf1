"""
Unit tests for `qnahm.catalog.verification`.
"""

from fractions import Fraction
from pathlib import Path

import pytest

from qnahm.catalog.entries import IdentityEntry, find_entry, load_catalog
from qnahm.catalog.verification import (
    Divergent,
    Fail,
    Pass,
    select_entries,
    verify_all,
    verify_entry,
)

TYPO_CATALOG = """
- id: s-39
  lhs:
    - sum: {exponent: "2*n^2", denominator: ["(q;q)_{2*n}"]}
  rhs:
    - product: "(-q^3, -q^5, q^8; q^8)_inf / (q;q)_inf"
- id: divergent
  lhs:
    - nahm: {A: [[0, 1], [1, 0]], B: [0, 0]}
  rhs:
    - product: "1"
- id: zero
  lhs:
    - weight: 0
      product: "J_1"
  rhs: []
"""


@pytest.fixture
def catalog(monkeypatch: pytest.MonkeyPatch) -> list[IdentityEntry]:
    monkeypatch.delenv("QNAHM_CATALOG", raising=False)
    return load_catalog()


@pytest.mark.parametrize(
    "id",
    [
        "euler-1",
        "jacobi",
        "zagier-2-0",
        "zagier-1-0",
        "s-39",
        "s-39-as-quadruple",
        "eq3-2",
        "finite-2-even",
    ],
)
def test__verify_entry__catalog(catalog: list[IdentityEntry], id: str) -> None:
    """
    Selected entries of the shipped catalog hold to order 30.
    """

    verdict = verify_entry(find_entry(catalog, id), 30)
    assert verdict == Pass(Fraction(30))
    assert verdict.name == "pass"


def test__verify_entry__typos(tmp_path: Path) -> None:
    """
    A wrong product fails, a divergent sum is reported as such.
    """

    path = tmp_path / "typos.yaml"
    path.write_text(TYPO_CATALOG)
    entries = load_catalog(path)

    # Case 1: 1 / (q; q)_inf instead of 1 / (q^2; q^2)_inf
    verdict = verify_entry(entries[0], 20)
    assert isinstance(verdict, Fail)
    assert verdict.instance == "s-39"
    assert verdict.mismatch.exponent == 1
    assert verdict.mismatch.lhs_coeff == 0
    assert verdict.mismatch.rhs_coeff == 1

    # Case 2: A sum that does not converge
    verdict = verify_entry(entries[1], 20)
    assert isinstance(verdict, Divergent)
    assert verdict.name == "divergent"

    # Case 3: 0 = 0
    assert verify_entry(entries[2], 20) == Pass(Fraction(20))


def test__verify_all(tmp_path: Path, catalog: list[IdentityEntry]) -> None:
    """
    Test `qnahm.catalog.verification.verify_all()`.
    """

    # Case 1: A filtered run over the shipped catalog
    report = verify_all(catalog, 20, pattern="zagier-*")
    assert [entry.id for entry in report.entries] == sorted(
        entry.id for entry in select_entries(catalog, "zagier-*")
    )
    assert len(report.entries) == 7
    assert report.passed
    assert report.counts() == {"pass": 7, "fail": 0, "divergent": 0}

    # Case 2: The report of a catalog with errors
    path = tmp_path / "typos.yaml"
    path.write_text(TYPO_CATALOG)
    report = verify_all(load_catalog(path), 20)
    assert not report.passed
    assert report.counts() == {"pass": 1, "fail": 1, "divergent": 1}
    data = report.to_dict()
    assert data["order"] == "20"
    assert [entry["id"] for entry in data["entries"]] == [
        "divergent",
        "s-39",
        "zero",
    ]
    assert "reason" in data["entries"][0]
    assert data["entries"][1]["first_mismatch"] == {
        "exponent": "1",
        "lhs": "0",
        "rhs": "1",
    }
    assert data["entries"][2]["verdict"] == "pass"


@pytest.mark.slow
def test__verify_all__whole_catalog(catalog: list[IdentityEntry]) -> None:
    """
    Every entry of the shipped catalog holds to order 40.
    """

    report = verify_all(catalog, 40)
    assert len(report.entries) == 182
    assert report.counts() == {"pass": 182, "fail": 0, "divergent": 0}
    assert report.passed


@pytest.mark.slow
@pytest.mark.parametrize("id", ["eq1-1", "eq1-2"])
def test__verify_entry__high_order(
    catalog: list[IdentityEntry],
    id: str,
) -> None:
    """
    The conjectured identities hold to order 200.
    """

    verdict = verify_entry(find_entry(catalog, id), 200)
    assert verdict == Pass(Fraction(200))


def test__select_entries(catalog: list[IdentityEntry]) -> None:
    """
    Test `qnahm.catalog.verification.select_entries()`.
    """

    assert select_entries(catalog, None) == catalog
    selected = select_entries(catalog, "s-3*")
    assert [entry.id for entry in selected] == [
        "s-39",
        "s-39-as-quadruple",
        "s-38",
        "s-31",
        "s-32",
        "s-33",
    ]
    assert select_entries(catalog, "S*")[0].id == "S85"
