"""
(Partial) Nahm sums on lattice cosets and general q-hypergeometric sums.
"""

from qnahm.nahm.dissection import (
    DISSECTION_PATTERNS,
    Dissection,
    InvalidShape,
    dissection_transform,
    f_shape,
    f_sum,
)
from qnahm.nahm.enumeration import DivergentSpec, enumerate_support
from qnahm.nahm.evaluation import eval_nahm, eval_sumspec
from qnahm.nahm.lattice import coset_form, coset_representatives
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

__all__ = [
    "DISSECTION_PATTERNS",
    "AffineForm",
    "Dissection",
    "DivergentSpec",
    "InvalidShape",
    "LatticeCoset",
    "NahmSpec",
    "PochTerm",
    "QuadExpr",
    "QuadraticForm",
    "SumSpec",
    "coset_form",
    "coset_representatives",
    "diagonal_coset",
    "dissection_transform",
    "enumerate_support",
    "eval_nahm",
    "eval_sumspec",
    "f_shape",
    "f_sum",
    "full_lattice",
    "quad_matrix",
]
