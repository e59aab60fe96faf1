"""
Verify catalog entries by exact coefficient comparison.
"""

from dataclasses import dataclass, field
from fnmatch import fnmatchcase
from fractions import Fraction
from functools import partial
from typing import Any, Sequence

from qnahm.catalog.entries import IdentityEntry, Instance
from qnahm.nahm.enumeration import DivergentSpec
from qnahm.qfactors.pochhammer import DivergentProduct
from qnahm.series.puiseux import FirstMismatch, equal_to_order
from qnahm.series.rationals import RatLike, as_rat, format_rat
from qnahm.utils.multiproc import parallel_map
from qnahm.utils.tracking import Stopwatch


@dataclass(frozen=True)
class Pass:
    order: Fraction

    name = "pass"


@dataclass(frozen=True)
class Fail:
    instance: str
    mismatch: FirstMismatch

    name = "fail"


@dataclass(frozen=True)
class Divergent:
    instance: str
    reason: str

    name = "divergent"


Verdict = Pass | Fail | Divergent


def verify_instance(instance: Instance, order: RatLike) -> Verdict:
    """
    Compare both sides of a concrete identity up to `order`.
    """

    order = as_rat(order)
    try:
        lhs, rhs = instance.evaluate(order)
    except (DivergentSpec, DivergentProduct) as e:
        return Divergent(instance.label, str(e))

    result = equal_to_order(lhs, rhs, order)
    if isinstance(result, FirstMismatch):
        return Fail(instance.label, result)
    return Pass(order)


def verify_entry(entry: IdentityEntry, order: RatLike) -> Verdict:
    """
    Verify an entry (at every sample, if it has parameters).

    Args:
        entry: The catalog entry.
        order: Truncation order N in q-units.

    Returns:
        `Pass` if all instances agree up to q^N, otherwise the verdict
        of the first instance that does not.
    """

    order = as_rat(order)
    for instance in entry.instances:
        verdict = verify_instance(instance, order)
        if not isinstance(verdict, Pass):
            return verdict
    return Pass(order)


@dataclass(frozen=True)
class EntryReport:
    id: str
    status: str
    verdict: Verdict
    millis: int

    @property
    def passed(self) -> bool:
        return isinstance(self.verdict, Pass)

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {
            "id": self.id,
            "status": self.status,
            "verdict": self.verdict.name,
        }
        match self.verdict:
            case Fail(instance=instance, mismatch=mismatch):
                result["instance"] = instance
                result["first_mismatch"] = mismatch.to_dict()
            case Divergent(instance=instance, reason=reason):
                result["instance"] = instance
                result["reason"] = reason
        result["millis"] = self.millis
        return result


@dataclass
class CatalogReport:
    order: Fraction
    entries: list[EntryReport] = field(default_factory=list)
    millis: int = 0

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)

    def counts(self) -> dict[str, int]:
        result = {"pass": 0, "fail": 0, "divergent": 0}
        for entry in self.entries:
            result[entry.verdict.name] += 1
        return result

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": format_rat(self.order),
            "total_millis": self.millis,
            "counts": self.counts(),
            "entries": [entry.to_dict() for entry in self.entries],
        }


def _timed_verification(entry: IdentityEntry, order: Fraction) -> EntryReport:
    with Stopwatch() as stopwatch:
        verdict = verify_entry(entry, order)
    return EntryReport(entry.id, entry.status, verdict, stopwatch.millis)


def select_entries(
    entries: Sequence[IdentityEntry],
    pattern: str | None,
) -> list[IdentityEntry]:
    """
    All entries whose id matches the shell-style `pattern` (e.g. "s-*").
    """

    if pattern is None:
        return list(entries)
    return [entry for entry in entries if fnmatchcase(entry.id, pattern)]


def verify_all(
    entries: Sequence[IdentityEntry],
    order: RatLike,
    pattern: str | None = None,
    jobs: int | None = 1,
    show_progress: bool = False,
) -> CatalogReport:
    """
    Verify all (matching) entries of a catalog.

    Args:
        entries: The catalog.
        order: Truncation order N in q-units.
        pattern: Optional shell-style filter on the entry ids.
        jobs: Number of worker processes (None / 0: all cores).
        show_progress: Whether to show a progress bar.

    Returns:
        The report with one result per entry, sorted by id.
    """

    order = as_rat(order)
    selected = select_entries(entries, pattern)
    with Stopwatch() as stopwatch:
        reports = parallel_map(
            partial(_timed_verification, order=order),
            selected,
            jobs=jobs,
            show_progress=show_progress,
        )
    reports.sort(key=lambda report: report.id)
    return CatalogReport(order=order, entries=reports, millis=stopwatch.millis)
