"""
Product-side expressions: a rational constant, a monomial q^mu and a
finite list of infinite Pochhammer factors (arg; base)_inf^power.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable

from qnahm.qfactors.monomials import SignedMonomial, q_power
from qnahm.qfactors.pochhammer import (
    binomial_exponents,
    binomial_product,
    check_convergent,
)
from qnahm.series.puiseux import PuiseuxSeries, zero_series
from qnahm.series.rationals import (
    RatLike,
    as_rat,
    format_rat,
    lcm_of_denominators,
)


@dataclass(frozen=True)
class PochFactor:
    """
    A single factor (arg; base)_inf^power.
    """

    arg: SignedMonomial
    base: SignedMonomial
    power: int = 1

    def sort_key(self) -> tuple[Fraction, int, Fraction, int]:
        return (self.base.exp, -self.base.sign, self.arg.exp, -self.arg.sign)

    def __str__(self) -> str:
        text = f"({self.arg};{self.base})_inf"
        return text if self.power == 1 else f"{text}^{self.power}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "arg_sign": self.arg.sign,
            "arg_exp": format_rat(self.arg.exp),
            "base_sign": self.base.sign,
            "base_exp": format_rat(self.base.exp),
            "power": self.power,
        }


@dataclass(frozen=True)
class ProductSpec:
    """
    The expression constant * q^monomial_exp * prod_k factors[k].

    Factors are merged and sorted canonically on construction, so two
    specs for the same formal product are equal as objects.
    """

    constant: Fraction = Fraction(1)
    monomial_exp: Fraction = Fraction(0)
    factors: tuple[PochFactor, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:

        powers: dict[tuple[SignedMonomial, SignedMonomial], int]
        powers = defaultdict(int)
        for factor in self.factors:
            check_convergent(factor.arg, factor.base)
            powers[(factor.arg, factor.base)] += factor.power

        merged = [
            PochFactor(arg, base, power)
            for (arg, base), power in powers.items()
            if power != 0
        ]
        merged.sort(key=PochFactor.sort_key)

        object.__setattr__(self, "constant", as_rat(self.constant))
        object.__setattr__(self, "monomial_exp", as_rat(self.monomial_exp))
        object.__setattr__(self, "factors", tuple(merged))

    # -------------------------------------------------------------------------
    # Algebra on product expressions
    # -------------------------------------------------------------------------

    def __mul__(self, other: ProductSpec) -> ProductSpec:
        return ProductSpec(
            constant=self.constant * other.constant,
            monomial_exp=self.monomial_exp + other.monomial_exp,
            factors=self.factors + other.factors,
        )

    def __pow__(self, k: int) -> ProductSpec:
        if k < 0:
            return self.inverse() ** (-k)
        return ProductSpec(
            constant=self.constant**k,
            monomial_exp=self.monomial_exp * k,
            factors=tuple(
                PochFactor(f.arg, f.base, f.power * k) for f in self.factors
            ),
        )

    def inverse(self) -> ProductSpec:
        if self.constant == 0:
            raise ZeroDivisionError("Cannot invert a vanishing product!")
        return ProductSpec(
            constant=1 / self.constant,
            monomial_exp=-self.monomial_exp,
            factors=tuple(
                PochFactor(f.arg, f.base, -f.power) for f in self.factors
            ),
        )

    def scaled(self, constant: RatLike) -> ProductSpec:
        return ProductSpec(
            self.constant * as_rat(constant), self.monomial_exp, self.factors
        )

    def shifted(self, exponent: RatLike) -> ProductSpec:
        return ProductSpec(
            self.constant, self.monomial_exp + as_rat(exponent), self.factors
        )

    def substituted(self, k: RatLike) -> ProductSpec:
        """
        Apply q -> q^k (with k > 0) to all exponents.
        """

        k = as_rat(k)
        if k <= 0:
            raise ValueError(f"Exponent must be positive, got {k}!")
        return ProductSpec(
            self.constant,
            self.monomial_exp * k,
            tuple(
                PochFactor(
                    SignedMonomial(f.arg.exp * k, f.arg.sign),
                    SignedMonomial(f.base.exp * k, f.base.sign),
                    f.power,
                )
                for f in self.factors
            ),
        )

    def normalized(self) -> ProductSpec:
        """
        Rewrite all factors with positive arguments and positive bases:
            (a; -b)_inf = (a; b^2)_inf * (-a b; b^2)_inf,
            (-a; b)_inf = (a^2; b^2)_inf / (a; b)_inf.
        """

        pending = list(self.factors)
        result: list[PochFactor] = []
        while pending:
            f = pending.pop()
            if f.base.sign == -1:
                square = SignedMonomial(2 * f.base.exp)
                pending.append(PochFactor(f.arg, square, f.power))
                pending.append(
                    PochFactor(
                        SignedMonomial(f.arg.exp + f.base.exp, -f.arg.sign),
                        square,
                        f.power,
                    )
                )
            elif f.arg.sign == -1:
                result.append(
                    PochFactor(
                        SignedMonomial(2 * f.arg.exp),
                        SignedMonomial(2 * f.base.exp),
                        f.power,
                    )
                )
                result.append(
                    PochFactor(-f.arg, f.base, -f.power)
                )
            else:
                result.append(f)
        return ProductSpec(self.constant, self.monomial_exp, tuple(result))

    def lattice(self) -> int:
        """
        Smallest D such that all factor exponents lie on (1/D) * Z.
        """
        return lcm_of_denominators(
            [f.arg.exp for f in self.factors]
            + [f.base.exp for f in self.factors]
        )

    # -------------------------------------------------------------------------
    # Printing and serialization
    # -------------------------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        if self.constant != 1 or not self.factors:
            parts.append(format_rat(self.constant))
        if self.monomial_exp != 0:
            parts.append(f"q^({format_rat(self.monomial_exp)})")
        parts.extend(str(f) for f in self.factors)
        return " * ".join(parts)

    def to_dict(self) -> dict[str, Any]:
        return {
            "constant": format_rat(self.constant),
            "monomial": format_rat(self.monomial_exp),
            "factors": [f.to_dict() for f in self.factors],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ProductSpec:
        return cls(
            constant=as_rat(str(data.get("constant", "1"))),
            monomial_exp=as_rat(str(data.get("monomial", "0"))),
            factors=tuple(
                PochFactor(
                    arg=SignedMonomial(
                        as_rat(str(f["arg_exp"])), int(f["arg_sign"])
                    ),
                    base=SignedMonomial(
                        as_rat(str(f["base_exp"])), int(f["base_sign"])
                    ),
                    power=int(f["power"]),
                )
                for f in data.get("factors", [])
            ),
        )


# -----------------------------------------------------------------------------
# Named products
# -----------------------------------------------------------------------------


def poch_product(
    args: Iterable[SignedMonomial],
    base: SignedMonomial,
    power: int = 1,
) -> ProductSpec:
    """
    The compressed product (a_1, ..., a_k; base)_inf^power.
    """
    return ProductSpec(
        factors=tuple(PochFactor(a, base, power) for a in args)
    )


def jacobi_j(m: RatLike, power: int = 1) -> ProductSpec:
    """
    J_m = (q^m; q^m)_inf.
    """
    return poch_product([q_power(m)], q_power(m), power)


def jacobi_j_am(a: RatLike, m: RatLike, power: int = 1) -> ProductSpec:
    """
    J_{a,m} = (q^a, q^(m-a), q^m; q^m)_inf.
    """
    a, m = as_rat(a), as_rat(m)
    return poch_product(
        [q_power(a), q_power(m - a), q_power(m)], q_power(m), power
    )


def jacobi_jbar_am(a: RatLike, m: RatLike, power: int = 1) -> ProductSpec:
    """
    The signed variant (-q^a, -q^(m-a), q^m; q^m)_inf.
    """
    a, m = as_rat(a), as_rat(m)
    return poch_product(
        [q_power(a, -1), q_power(m - a, -1), q_power(m)], q_power(m), power
    )


def binomial_spec(c: SignedMonomial, power: int = 1) -> ProductSpec:
    """
    The single factor (1 - c)^power as a product expression.

    For c = s * q^e with e > 0 this is (c; q^e)_inf / (c q^e; q^e)_inf,
    for e < 0 we pull out -s * q^e first, and for e = 0 we get the
    constant (1 - s)^power.

    Raises:
        ZeroDivisionError: If c = 1 and power < 0.
    """

    if power == 0:
        return ProductSpec()

    if c.exp == 0:
        value = Fraction(1 - c.sign)
        if value == 0 and power < 0:
            raise ZeroDivisionError("Division by the vanishing factor 1 - 1!")
        return ProductSpec(constant=value**power)

    if c.exp < 0:
        outer = ProductSpec(
            constant=Fraction(-c.sign) ** power,
            monomial_exp=c.exp * power,
        )
        return outer * binomial_spec(c.inverse(), power)

    base = q_power(c.exp)
    return ProductSpec(
        factors=(
            PochFactor(c, base, power),
            PochFactor(c * base, base, -power),
        )
    )


def poch_spec(
    arg: SignedMonomial,
    base: SignedMonomial,
    length: int | None = None,
    power: int = 1,
) -> ProductSpec:
    """
    The Pochhammer symbol (arg; base)_length^power (length None means
    infinite) as a product expression. Factors 1 - arg * base^k whose
    exponent is not positive are split off as binomials, so arguments
    like -q^(-1/4) are fine.
    """

    if base.exp <= 0:
        raise ValueError(f"Base {base} must have a positive exponent!")

    result = ProductSpec()
    k = 0
    while length is None or k < length:
        current = arg * base**k
        if length is None and current.exp > 0:
            return result * ProductSpec(
                factors=(PochFactor(current, base, power),)
            )
        result = result * binomial_spec(current, power)
        k += 1
    return result


# -----------------------------------------------------------------------------
# Evaluation
# -----------------------------------------------------------------------------


def eval_product(spec: ProductSpec, order: RatLike) -> PuiseuxSeries:
    """
    Expand constant * q^mu * prod (arg; base)_inf^power to `order`.
    """
    return _eval_product(spec, as_rat(order))


@lru_cache(maxsize=512)
def _eval_product(spec: ProductSpec, order: Fraction) -> PuiseuxSeries:

    if spec.constant == 0:
        return zero_series()

    # All factors are expanded on one lattice, up to order - mu
    denom = spec.lattice()
    top = math.floor((order - spec.monomial_exp) * denom)
    if top < 0:
        return zero_series(order)

    triples = [
        (c, m, f.power)
        for f in spec.factors
        for c, m in binomial_exponents(f.arg, f.base, denom, 0, None, top)
    ]
    constant, shift, coeffs = binomial_product(triples, top)

    series = PuiseuxSeries(
        [constant * spec.constant * c for c in coeffs],
        lo=shift,
        denom=denom,
        order=order - spec.monomial_exp,
    )
    return series.shift(spec.monomial_exp)
