"""
A machine-readable catalog of sum-to-product identities, together with
a harness that verifies them by exact coefficient comparison.
"""

from qnahm.catalog.entries import (
    IdentityEntry,
    Instance,
    Quadruple,
    Term,
    evaluate_side,
    find_entry,
    load_catalog,
    parse_entry,
)
from qnahm.catalog.parsing import (
    ParseError,
    parse_affine,
    parse_monomial,
    parse_product,
    parse_quadratic,
    parse_rational,
)
from qnahm.catalog.verification import (
    CatalogReport,
    Divergent,
    EntryReport,
    Fail,
    Pass,
    Verdict,
    select_entries,
    verify_all,
    verify_entry,
    verify_instance,
)

__all__ = [
    "CatalogReport",
    "Divergent",
    "EntryReport",
    "Fail",
    "IdentityEntry",
    "Instance",
    "ParseError",
    "Pass",
    "Quadruple",
    "Term",
    "Verdict",
    "evaluate_side",
    "find_entry",
    "load_catalog",
    "parse_affine",
    "parse_entry",
    "parse_monomial",
    "parse_product",
    "parse_quadratic",
    "parse_rational",
    "select_entries",
    "verify_all",
    "verify_entry",
    "verify_instance",
]
