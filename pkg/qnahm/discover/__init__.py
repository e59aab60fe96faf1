"""
Discovery of modular partial Nahm sums: product recovery, periodicity
of exponent profiles, completion exponents and grid searches.
"""

from qnahm.discover.period import (
    InsufficientOrder,
    Period,
    detect_period,
    pattern_to_product,
    product_pattern,
)
from qnahm.discover.prefactor import (
    P2,
    NotAnIdentity,
    PrefactorRow,
    cross_check,
    eta_weight_exponent,
    modular_weight,
    prefactor_row,
    quadruple_product,
    required_C,
)
from qnahm.discover.prodmake import ExponentProfile, NotAProduct, prodmake
from qnahm.discover.search import (
    Candidate,
    SearchGridConfig,
    SearchReport,
    Skipped,
    grid_points,
    load_grid,
    run_search,
    screen_spec,
    search_quadruples,
)

__all__ = [
    "Candidate",
    "ExponentProfile",
    "InsufficientOrder",
    "NotAProduct",
    "NotAnIdentity",
    "P2",
    "Period",
    "PrefactorRow",
    "SearchGridConfig",
    "SearchReport",
    "Skipped",
    "cross_check",
    "detect_period",
    "eta_weight_exponent",
    "grid_points",
    "load_grid",
    "modular_weight",
    "pattern_to_product",
    "prefactor_row",
    "prodmake",
    "product_pattern",
    "quadruple_product",
    "required_C",
    "run_search",
    "screen_spec",
    "search_quadruples",
]
