"""
Command line interface: expand both sides of catalog identities, verify
them, recover products from series, search for modular partial Nahm
sums and compute completion exponents.

Exit codes: 0 on success, 1 if a verification fails, 2 on usage errors.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from pydantic import ValidationError
from tabulate import tabulate

from qnahm.catalog.entries import (
    IdentityEntry,
    find_entry,
    load_catalog,
)
from qnahm.catalog.parsing import ParseError, parse_product
from qnahm.catalog.verification import (
    Divergent,
    Fail,
    Pass,
    select_entries,
    verify_all,
    verify_entry,
)
from qnahm.discover.period import InsufficientOrder, detect_period
from qnahm.discover.prefactor import DEFAULT_CHECK_ORDER, cross_check
from qnahm.discover.prodmake import NotAProduct, prodmake
from qnahm.discover.search import CRITERION, load_grid, run_search
from qnahm.nahm.enumeration import DivergentSpec
from qnahm.qfactors.pochhammer import DivergentProduct
from qnahm.qfactors.products import eval_product
from qnahm.series.puiseux import PuiseuxSeries
from qnahm.series.rationals import format_rat, parse_rat
from qnahm.utils.config import save_yaml
from qnahm.utils.paths import expand_env_variables_in_path

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

DEFAULT_ORDER = {
    "expand": "20",
    "verify": "40",
    "verify-all": "40",
    "prodmake": "100",
    "prefactor": format_rat(DEFAULT_CHECK_ORDER),
}


class UsageError(Exception):
    pass


def get_cli_arguments(
    argv: Sequence[str] | None = None,
) -> argparse.Namespace:
    """
    Get the command line arguments.
    """

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--order",
        type=str,
        default=None,
        help="Truncation order N in q-units (e.g., 40 or 81/2).",
    )
    common.add_argument(
        "--catalog",
        type=Path,
        default=None,
        help="Path to the catalog file (default: shipped catalog).",
    )
    common.add_argument(
        "--json",
        action="store_true",
        help="Print the report as JSON instead of a table.",
    )
    common.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="Number of worker processes (0: all available cores).",
    )

    parser = argparse.ArgumentParser(
        prog="qnahm",
        description="Exact q-series toolkit for (partial) Nahm sums.",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    expand = verbs.add_parser(
        "expand",
        parents=[common],
        help="Expand a product or one side of a catalog identity.",
    )
    expand.add_argument(
        "--id",
        type=str,
        default=None,
        help="ID of the catalog entry.",
    )
    expand.add_argument(
        "--side",
        choices=["lhs", "rhs"],
        default="lhs",
        help="Which side of the identity to expand.",
    )
    expand.add_argument(
        "--product",
        type=str,
        default=None,
        help="A product expression, e.g., '(q;q)_inf^2 / (q^2;q^2)_inf'.",
    )

    verify = verbs.add_parser(
        "verify",
        parents=[common],
        help="Verify a single catalog identity.",
    )
    verify.add_argument(
        "--id",
        type=str,
        required=True,
        help="ID of the catalog entry.",
    )

    for name, help_text in [
        ("verify-all", "Verify all (matching) catalog identities."),
        ("catalog-list", "List the (matching) catalog entries."),
    ]:
        subparser = verbs.add_parser(name, parents=[common], help=help_text)
        subparser.add_argument(
            "--filter",
            type=str,
            default=None,
            help="Shell-style pattern for the entry IDs (e.g., 's-*').",
        )

    prodmake_parser = verbs.add_parser(
        "prodmake",
        parents=[common],
        help="Recover the product exponents of a series.",
    )
    prodmake_parser.add_argument(
        "--id",
        type=str,
        default=None,
        help="ID of the catalog entry (uses the left-hand side).",
    )
    prodmake_parser.add_argument(
        "--product",
        type=str,
        default=None,
        help="A product expression to analyze instead.",
    )
    prodmake_parser.add_argument(
        "--max-period",
        type=int,
        default=24,
        help="Largest period of the exponent profile to look for.",
    )

    search = verbs.add_parser(
        "search",
        parents=[common],
        help="Search a grid for modular partial Nahm sums.",
    )
    search.add_argument(
        "--grid",
        type=Path,
        required=True,
        help="Path to the YAML file that defines the search grid.",
    )
    search.add_argument(
        "--max-period",
        type=int,
        default=None,
        help="Largest period to look for (default: from the grid).",
    )
    search.add_argument(
        "--output",
        type=Path,
        default=None,
        help="Also save the report to this YAML file.",
    )

    prefactor = verbs.add_parser(
        "prefactor",
        parents=[common],
        help="Compute the C that completes catalog quadruples.",
    )
    prefactor.add_argument(
        "--id",
        type=str,
        default=None,
        help="ID of the catalog entry (default: all entries).",
    )
    prefactor.add_argument(
        "--filter",
        type=str,
        default=None,
        help="Shell-style pattern for the entry IDs.",
    )

    # Usage errors raised by a verb print that verb's synopsis
    for subparser in verbs.choices.values():
        subparser.set_defaults(usage=subparser.format_usage())

    args = parser.parse_args(argv)
    return args


# -----------------------------------------------------------------------------
# Helpers
# -----------------------------------------------------------------------------


def _order(args: argparse.Namespace) -> Fraction | None:
    text = args.order
    if text is None:
        text = DEFAULT_ORDER.get(args.verb)
    if text is None:
        return None
    try:
        order = parse_rat(text)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"Invalid order '{text}'!") from e
    if order <= 0:
        raise UsageError(f"Order must be positive, got {text}!")
    return order


def _catalog(args: argparse.Namespace) -> list[IdentityEntry]:
    if args.catalog is None:
        return load_catalog()
    file_path = expand_env_variables_in_path(args.catalog)
    if not file_path.exists():
        raise UsageError(f"Catalog {file_path} does not exist!")
    return load_catalog(file_path)


def _entry(args: argparse.Namespace) -> IdentityEntry:
    try:
        return find_entry(_catalog(args), args.id)
    except KeyError as e:
        raise UsageError(e.args[0]) from e


def _series_source(
    args: argparse.Namespace,
    order: Fraction,
) -> tuple[str, PuiseuxSeries]:
    if (args.id is None) == (args.product is None):
        raise UsageError("Specify exactly one of --id and --product!")

    if args.product is not None:
        return args.product, eval_product(parse_product(args.product), order)

    entry = _entry(args)
    instance = entry.instances[0]
    lhs, rhs = instance.evaluate(order)
    if getattr(args, "side", "lhs") == "rhs":
        return f"{instance.label} (rhs)", rhs
    return f"{instance.label} (lhs)", lhs


def _print(args: argparse.Namespace, data: Any, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


# -----------------------------------------------------------------------------
# Verbs
# -----------------------------------------------------------------------------


def run_expand(args: argparse.Namespace) -> int:
    order = _order(args)
    assert order is not None
    label, series = _series_source(args, order)
    _print(args, series.to_dict(), f"{label}:\n{series}")
    return EXIT_OK


def run_verify(args: argparse.Namespace) -> int:
    order = _order(args)
    assert order is not None
    entry = _entry(args)

    verdict = verify_entry(entry, order)
    data: dict[str, Any] = {
        "id": entry.id,
        "status": entry.status,
        "order": format_rat(order),
        "verdict": verdict.name,
    }
    match verdict:
        case Pass():
            text = f"{entry.id}: pass (order {format_rat(order)})"
        case Fail(instance=instance, mismatch=mismatch):
            data["instance"] = instance
            data["first_mismatch"] = mismatch.to_dict()
            text = (
                f"{entry.id}: FAIL at {instance}, first mismatch at "
                f"q^{format_rat(mismatch.exponent)}: "
                f"{format_rat(mismatch.lhs_coeff)} (lhs) != "
                f"{format_rat(mismatch.rhs_coeff)} (rhs)"
            )
        case Divergent(instance=instance, reason=reason):
            data["instance"] = instance
            data["reason"] = reason
            text = f"{entry.id}: divergent at {instance}: {reason}"

    _print(args, data, text)
    return EXIT_OK if isinstance(verdict, Pass) else EXIT_FAILURE


def run_verify_all(args: argparse.Namespace) -> int:
    order = _order(args)
    assert order is not None

    if not args.json:
        print("Loading catalog...", end=" ", flush=True)
    entries = _catalog(args)
    if not args.json:
        print(f"Done! ({len(entries)} entries)", flush=True)

    report = verify_all(
        entries,
        order,
        pattern=args.filter,
        jobs=args.jobs,
        show_progress=not args.json,
    )

    rows = [
        [
            entry.id,
            entry.status,
            entry.verdict.name,
            entry.millis,
        ]
        for entry in report.entries
    ]
    counts = ", ".join(f"{k}: {v}" for k, v in report.counts().items())
    text = tabulate(rows, headers=["ID", "Status", "Verdict", "ms"])
    text += f"\n\n{counts} (total: {report.millis} ms)"
    _print(args, report.to_dict(), text)
    return EXIT_OK if report.passed else EXIT_FAILURE


def run_catalog_list(args: argparse.Namespace) -> int:
    entries = select_entries(_catalog(args), args.filter)
    data = [
        {
            "id": entry.id,
            "status": entry.status,
            "anchor": entry.anchor,
            "params": list(entry.params),
            "instances": len(entry.instances),
            "quadruple": any(i.quadruple for i in entry.instances),
        }
        for entry in entries
    ]
    rows = [
        [d["id"], d["status"], d["anchor"], ", ".join(d["params"])]
        for d in data
    ]
    text = tabulate(rows, headers=["ID", "Status", "Anchor", "Params"])
    _print(args, data, text)
    return EXIT_OK


def run_prodmake(args: argparse.Namespace) -> int:
    order = _order(args)
    assert order is not None
    label, series = _series_source(args, order)
    profile = prodmake(series, order)

    data: dict[str, Any] = {"source": label, **profile.to_dict()}
    try:
        period = detect_period(profile, args.max_period)
    except InsufficientOrder as e:
        data["period"] = None
        data["period_error"] = str(e)
        period_text = str(e)
    else:
        data["period"] = None if period is None else period.to_dict()
        period_text = (
            "no exact period"
            if period is None
            else f"period {period.period}, pattern {list(period.pattern)}"
        )

    text = (
        f"{label}: c = {format_rat(profile.c)}, "
        f"mu = {format_rat(profile.mu)}, x = q^(1/{profile.denom})\n"
        f"e = {list(profile.e)}\n"
        f"{period_text}"
    )
    _print(args, data, text)
    return EXIT_OK


def run_search_grid(args: argparse.Namespace) -> int:
    grid_path = expand_env_variables_in_path(args.grid)
    if not grid_path.exists():
        raise UsageError(f"Grid file {grid_path} does not exist!")
    grid = load_grid(grid_path)
    if not args.json:
        print(f"Screening grid from {grid_path}...", flush=True)
    report = run_search(
        grid,
        order=_order(args),
        max_period=args.max_period,
        jobs=args.jobs,
        show_progress=not args.json,
    )

    rows = [
        [
            json.dumps(c.spec.to_dict()),
            str(c.product),
            format_rat(c.required_C),
            c.orders_matched,
        ]
        for c in report.candidates
    ]
    text = tabulate(rows, headers=["Spec", "Product", "C", "Matched"])
    text += (
        f"\n\n{len(report.candidates)} candidates, "
        f"{len(report.skipped)} skipped, {report.num_points} points"
        f"\nCriterion: {CRITERION}"
    )
    if args.output is not None:
        save_yaml(report.to_dict(), expand_env_variables_in_path(args.output))
    _print(args, report.to_dict(), text)
    return EXIT_OK


def run_prefactor(args: argparse.Namespace) -> int:
    order = _order(args)
    assert order is not None
    if args.id is not None:
        entries = [_entry(args)]
        if not any(i.quadruple for i in entries[0].instances):
            raise UsageError(f"Entry '{args.id}' has no quadruple!")
    else:
        entries = select_entries(_catalog(args), args.filter)

    rows = cross_check(entries, order, jobs=args.jobs)
    data = [row.to_dict() for row in rows]
    table = [
        [
            d["id"],
            d["printed_C"],
            d["computed_C"],
            d["weight"],
            {True: "yes", False: "NO", None: "-"}[d["agrees"]],
            d.get("error", ""),
        ]
        for d in data
    ]
    text = tabulate(
        table,
        headers=["ID", "Printed C", "C", "Weight", "Agrees", "Error"],
    )
    _print(args, data, text)
    return EXIT_OK


VERBS = {
    "expand": run_expand,
    "verify": run_verify,
    "verify-all": run_verify_all,
    "catalog-list": run_catalog_list,
    "prodmake": run_prodmake,
    "search": run_search_grid,
    "prefactor": run_prefactor,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = get_cli_arguments(argv)
    try:
        return VERBS[args.verb](args)
    except (UsageError, ParseError, NotAProduct, ValidationError) as e:
        print(args.usage, end="", file=sys.stderr)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DivergentSpec, DivergentProduct) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
