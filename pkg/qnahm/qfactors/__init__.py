"""
q-Pochhammer symbols, Gaussian coefficients, theta sums and products.
"""

from qnahm.qfactors.monomials import Q, SignedMonomial, q_power
from qnahm.qfactors.pochhammer import (
    DivergentProduct,
    PochhammerTable,
    finite_length_reciprocal,
    poch_finite,
    poch_infinite,
    qbinomial,
)
from qnahm.qfactors.products import (
    PochFactor,
    ProductSpec,
    binomial_spec,
    eval_product,
    jacobi_j,
    jacobi_j_am,
    jacobi_jbar_am,
    poch_product,
    poch_spec,
)
from qnahm.qfactors.theta import (
    DivergentTheta,
    theta_sum,
    triple_product_series,
    triple_product_spec,
)

__all__ = [
    "DivergentProduct",
    "DivergentTheta",
    "PochFactor",
    "PochhammerTable",
    "ProductSpec",
    "Q",
    "SignedMonomial",
    "binomial_spec",
    "eval_product",
    "finite_length_reciprocal",
    "jacobi_j",
    "jacobi_j_am",
    "jacobi_jbar_am",
    "poch_finite",
    "poch_infinite",
    "poch_product",
    "poch_spec",
    "q_power",
    "qbinomial",
    "theta_sum",
    "triple_product_series",
    "triple_product_spec",
]
