"""
Bailey pairs, the (limiting) Bailey lemma and related finite identities.
"""

from qnahm.bailey.lemmas import (
    FINITE_IDENTITIES,
    SPLITTING_IDENTITIES,
    InvalidParams,
    bailey_limit_identity,
    check_vanishing_grid,
    finite_identity,
    identity_holds,
    splitting_identity,
    vanishing_spec,
    vanishing_sum,
)
from qnahm.bailey.pairs import (
    STANDARD_PAIRS,
    AlphaRule,
    BaileyPair,
    BaileyReport,
    SplitBeta,
    UnitBeta,
    check_bailey_pair,
    defining_sum,
    unit_pair,
)

__all__ = [
    "FINITE_IDENTITIES",
    "SPLITTING_IDENTITIES",
    "STANDARD_PAIRS",
    "AlphaRule",
    "BaileyPair",
    "BaileyReport",
    "InvalidParams",
    "SplitBeta",
    "UnitBeta",
    "bailey_limit_identity",
    "check_bailey_pair",
    "check_vanishing_grid",
    "defining_sum",
    "finite_identity",
    "identity_holds",
    "splitting_identity",
    "unit_pair",
    "vanishing_spec",
    "vanishing_sum",
]
