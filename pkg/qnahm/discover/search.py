"""
Grid search for modular partial Nahm sums: evaluate (A, B, 0, v + L)
for every grid point, recover the exponent profile of the series, and
keep the points whose profile is exactly periodic.

A candidate is evidence for modularity, not a proof.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from qnahm.catalog.config import Text
from qnahm.discover.period import (
    InsufficientOrder,
    detect_period,
    pattern_to_product,
)
from qnahm.discover.prefactor import eta_weight_exponent
from qnahm.discover.prodmake import NotAProduct, prodmake
from qnahm.nahm.enumeration import DivergentSpec
from qnahm.nahm.evaluation import eval_nahm
from qnahm.nahm.lattice import coset_representatives
from qnahm.nahm.specs import LatticeCoset, NahmSpec
from qnahm.qfactors.products import ProductSpec
from qnahm.series.rationals import RatLike, as_rat, format_rat
from qnahm.utils.config import load_yaml
from qnahm.utils.multiproc import parallel_map

CRITERION = (
    "exactly periodic exponent profile over the checked range, "
    "with a completion exponent C"
)


class SearchGridConfig(BaseModel):
    """
    Parser class for a search grid.
    """

    model_config = ConfigDict(extra="forbid")

    matrices: list[list[list[Text]]] = Field(
        default=[],
        description="Symmetric matrices A, e.g., [[0, 1], [1, 0]].",
    )
    b_values: list[Text] = Field(
        default=[],
        description=(
            "Values for every entry of B; all combinations are used."
        ),
    )
    b_vectors: list[list[Text]] = Field(
        default=[],
        description="Explicit vectors B (in addition to `b_values`).",
    )
    lattices: list[list[list[int]]] = Field(
        default=[],
        description=(
            "Sublattice bases L (default: the full lattice). Each lattice "
            "is combined with all of its cosets, unless `shifts` is set."
        ),
    )
    shifts: list[list[int]] | None = Field(
        default=None,
        description="Restrict the cosets to these shift vectors v.",
    )
    order: Text = Field(
        default="100",
        description="Truncation order N in q-units.",
    )
    max_period: int = Field(
        default=24,
        ge=1,
        description="Largest period of the exponent profile to look for.",
    )
    min_repeats: int = Field(
        default=3,
        ge=3,
        description="Number of periods that the profile must cover.",
    )

    @model_validator(mode="after")
    def check_ranks(self) -> "SearchGridConfig":
        ranks = {len(A) for A in self.matrices}
        ranks |= {len(B) for B in self.b_vectors}
        ranks |= {len(L) for L in self.lattices}
        ranks |= {len(v) for v in self.shifts or []}
        if len(ranks) > 1:
            raise ValueError(f"Grid mixes different ranks: {sorted(ranks)}!")
        return self

    @property
    def rank(self) -> int | None:
        return len(self.matrices[0]) if self.matrices else None


def load_grid(file_path: Path) -> SearchGridConfig:
    """
    Load a search grid from a YAML (or JSON) file.
    """

    data = load_yaml(file_path)
    return SearchGridConfig.model_validate(data or {})


def grid_points(grid: SearchGridConfig) -> list[NahmSpec]:
    """
    All specs (A, B, 0, v + L) of a grid, in a deterministic order.
    """

    rank = grid.rank
    if rank is None:
        return []

    vectors = [tuple(B) for B in grid.b_vectors]
    vectors += list(itertools.product(grid.b_values, repeat=rank))
    vectors = list(dict.fromkeys(vectors))

    identity = [[int(i == j) for j in range(rank)] for i in range(rank)]
    cosets: list[LatticeCoset] = []
    for L in grid.lattices or [identity]:
        basis = tuple(tuple(row) for row in L)
        if grid.shifts is None:
            cosets.extend(coset_representatives(basis))
        else:
            cosets.extend(LatticeCoset(basis, tuple(v)) for v in grid.shifts)

    return [
        NahmSpec.create(
            A=[[as_rat(x) for x in row] for row in A],
            B=[as_rat(x) for x in B],
            C=0,
            v=coset.shift,
            L=coset.basis,
        )
        for A in grid.matrices
        for B in vectors
        for coset in cosets
    ]


@dataclass(frozen=True)
class Candidate:
    """
    A partial Nahm sum that equals `product` up to the matched order,
    where `product` is periodic (of eta-quotient shape).
    """

    spec: NahmSpec
    product: ProductSpec
    required_C: Fraction
    orders_matched: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "spec": self.spec.to_dict(),
            "product": self.product.to_dict(),
            "required_C": format_rat(self.required_C),
            "orders_matched": self.orders_matched,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Candidate:
        return cls(
            spec=NahmSpec.from_dict(data["spec"]),
            product=ProductSpec.from_dict(data["product"]),
            required_C=as_rat(str(data["required_C"])),
            orders_matched=int(data["orders_matched"]),
        )


@dataclass(frozen=True)
class Skipped:
    spec: NahmSpec
    reason: str

    def to_dict(self) -> dict[str, Any]:
        return {"spec": self.spec.to_dict(), "reason": self.reason}


@dataclass
class SearchReport:
    candidates: list[Candidate] = field(default_factory=list)
    skipped: list[Skipped] = field(default_factory=list)
    num_points: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "criterion": CRITERION,
            "num_points": self.num_points,
            "candidates": [c.to_dict() for c in self.candidates],
            "skipped": [s.to_dict() for s in self.skipped],
        }


def screen_spec(
    spec: NahmSpec,
    order: RatLike,
    max_period: int,
    min_repeats: int = 3,
) -> Candidate | Skipped | None:
    """
    Run the pipeline eval_nahm -> prodmake -> detect_period on one spec.

    Returns:
        A `Candidate` if the profile is exactly periodic, `None` if it
        is not, and `Skipped` if the spec diverges or is not a product.
    """

    order = as_rat(order)
    try:
        series = eval_nahm(spec, order)
        profile = prodmake(series, order)
        period = detect_period(profile, max_period, min_repeats)
    except (DivergentSpec, NotAProduct, InsufficientOrder) as e:
        return Skipped(spec, str(e))

    if period is None:
        return None

    pure = pattern_to_product(period.period, period.pattern, period.denom)
    product = ProductSpec(profile.c, profile.mu) * pure
    return Candidate(
        spec=spec,
        product=product,
        required_C=eta_weight_exponent(pure) - profile.mu,
        orders_matched=len(profile.e),
    )


def run_search(
    grid: SearchGridConfig,
    order: RatLike | None = None,
    max_period: int | None = None,
    jobs: int | None = 1,
    show_progress: bool = False,
) -> SearchReport:
    """
    Screen all points of a grid (in parallel, if `jobs` != 1).

    Args:
        grid: The search grid.
        order: Truncation order N (default: the one of the grid).
        max_period: Largest period (default: the one of the grid).
        jobs: Number of worker processes (None / 0: all cores).
        show_progress: Whether to show a progress bar.

    Returns:
        Candidates and skipped specs, both in grid order.
    """

    specs = grid_points(grid)
    outcomes = parallel_map(
        partial(
            screen_spec,
            order=as_rat(order if order is not None else grid.order),
            max_period=max_period or grid.max_period,
            min_repeats=grid.min_repeats,
        ),
        specs,
        jobs=jobs,
        show_progress=show_progress,
    )

    report = SearchReport(num_points=len(specs))
    for outcome in outcomes:
        if isinstance(outcome, Candidate):
            report.candidates.append(outcome)
        elif isinstance(outcome, Skipped):
            report.skipped.append(outcome)
    return report


def search_quadruples(
    grid: SearchGridConfig,
    order: RatLike | None = None,
    max_period: int | None = None,
    jobs: int | None = 1,
) -> list[Candidate]:
    return run_search(grid, order, max_period, jobs).candidates
