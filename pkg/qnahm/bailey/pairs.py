"""
Bailey pairs relative to a = q^e (e >= 0), i.e., sequences with

    beta_n = sum_{r=0}^{n} alpha_r / ((q; q)_(n - r) (aq; q)_(n + r)).

The alpha sequences are stored as data: for each parity class of n
(n = 2k or n = 2k + 1) a list of monomials q^(c2 k^2 + c1 k + c0).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from qnahm.nahm.evaluation import eval_sumspec
from qnahm.nahm.specs import AffineForm, PochTerm, QuadraticForm, SumSpec
from qnahm.qfactors.monomials import Q, SignedMonomial, q_power
from qnahm.qfactors.pochhammer import finite_length_reciprocal
from qnahm.series.puiseux import (
    Equal,
    FirstMismatch,
    PuiseuxSeries,
    equal_to_order,
    linear_combine,
    monomial,
    zero_series,
)
from qnahm.series.rationals import RatLike, as_rat, format_rat

# Exponent polynomial (c2, c1, c0) in k
ExponentPolynomial = tuple[Fraction, Fraction, Fraction]

# A value of n together with (exponent, coefficient) pairs
Override = tuple[int, tuple[tuple[Fraction, Fraction], ...]]


def _poly(values: Sequence[RatLike]) -> ExponentPolynomial:
    c2, c1, c0 = (as_rat(x) for x in values)
    return c2, c1, c0


def _poly_min(poly: ExponentPolynomial) -> Fraction:
    """
    Lower bound of the polynomial over all k >= 0.
    """
    c2, c1, c0 = poly
    if c2 < 0 or (c2 == 0 and c1 < 0):
        raise ValueError(f"Exponent polynomial {poly} is unbounded below!")
    if c2 > 0 and c1 < 0:
        return c0 - c1 * c1 / (4 * c2)
    return c0


@dataclass(frozen=True)
class AlphaRule:
    """
    Parity-cased monomial data: alpha_(2k) = sum of q^even[i](k), and
    alpha_(2k+1) = sum of q^odd[i](k), with explicit `overrides` for
    single values of n (given as exponent -> coefficient maps).
    """

    even: tuple[ExponentPolynomial, ...] = ()
    odd: tuple[ExponentPolynomial, ...] = ()
    overrides: tuple[Override, ...] = ()

    def __call__(self, n: int) -> PuiseuxSeries:
        """
        The exact (Laurent polynomial) value of alpha_n.
        """

        for index, terms in self.overrides:
            if index == n:
                return linear_combine(
                    (c, monomial(1, e)) for e, c in terms
                )

        k, parity = divmod(n, 2)
        rules = self.odd if parity else self.even
        return linear_combine(
            (1, monomial(1, c2 * k * k + c1 * k + c0))
            for c2, c1, c0 in rules
        )

    def exponent_floor(self) -> Fraction:
        """
        A lower bound for the exponents of all alpha_n.
        """

        values = [_poly_min(p) for p in self.even + self.odd]
        values += [e for _, terms in self.overrides for e, _ in terms]
        return min(values, default=Fraction(0))

    def to_dict(self) -> dict[str, Any]:
        return {
            "even": [[format_rat(x) for x in p] for p in self.even],
            "odd": [[format_rat(x) for x in p] for p in self.odd],
            "overrides": {
                str(n): {format_rat(e): format_rat(c) for e, c in terms}
                for n, terms in self.overrides
            },
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> AlphaRule:
        overrides = tuple(
            (
                int(n),
                tuple(
                    (as_rat(str(e)), as_rat(str(c))) for e, c in terms.items()
                ),
            )
            for n, terms in data.get("overrides", {}).items()
        )
        return cls(
            even=tuple(_poly([str(x) for x in p]) for p in data["even"]),
            odd=tuple(_poly([str(x) for x in p]) for p in data["odd"]),
            overrides=overrides,
        )


class BetaForm(ABC):
    """
    Closed form of the beta sequence.
    """

    @abstractmethod
    def __call__(
        self,
        n: int,
        a: SignedMonomial,
        order: Fraction,
    ) -> PuiseuxSeries:
        raise NotImplementedError  # pragma: no cover

    @abstractmethod
    def exponent_floor(self) -> Fraction:
        raise NotImplementedError  # pragma: no cover

    @abstractmethod
    def to_dict(self) -> dict[str, Any]:
        raise NotImplementedError  # pragma: no cover


@dataclass(frozen=True)
class UnitBeta(BetaForm):
    """
    beta_n = 1 / ((q; q)_n (aq; q)_n), the partner of alpha_n = [n = 0].
    """

    def __call__(
        self,
        n: int,
        a: SignedMonomial,
        order: Fraction,
    ) -> PuiseuxSeries:
        return finite_length_reciprocal(
            n, Q, order
        ) * finite_length_reciprocal(n, Q, order, arg=a * Q)

    def exponent_floor(self) -> Fraction:
        return Fraction(0)

    def to_dict(self) -> dict[str, Any]:
        return {"type": "unit"}


@dataclass(frozen=True)
class SplitBeta(BetaForm):
    """
    beta_n = prefactor * sum_{i + j = n - offset}
        q^((i - j)^2 / 2 + s (i - j) / 2)
        / ((q; q)_(2i + t_i) (q; q)_(2j + t_j))

    where the prefactor is a polynomial given as (coefficient, exponent)
    pairs.
    """

    s: int
    t_i: int = 0
    t_j: int = 0
    offset: int = 0
    prefactor: tuple[tuple[Fraction, Fraction], ...] = (
        (Fraction(1), Fraction(0)),
    )

    def sumspec(self, n: int) -> SumSpec:
        """
        The sum over i (with j = m - i, m = n - offset) as a `SumSpec`.
        """

        # (i - j)^2 / 2 + s (i - j) / 2 with i - j = 2i - m
        m = n - self.offset
        exponent = QuadraticForm(
            A=((Fraction(4),),),
            B=(Fraction(self.s - 2 * m),),
            C=Fraction(m * m, 2) - Fraction(self.s * m, 2),
        )
        return SumSpec(
            exponent=exponent,
            denominator=(
                PochTerm(Q, Q, AffineForm((2,), self.t_i)),
                PochTerm(Q, Q, AffineForm((-2,), 2 * m + self.t_j)),
            ),
        )

    def __call__(
        self,
        n: int,
        a: SignedMonomial,
        order: Fraction,
    ) -> PuiseuxSeries:
        if n < self.offset:
            return zero_series(order)

        # The prefactor can lower exponents (coefficient shift)
        lowest = min(e for _, e in self.prefactor)
        inner = eval_sumspec(self.sumspec(n), order - lowest)
        return linear_combine(
            (c, inner.shift(e)) for c, e in self.prefactor
        ).truncate(order)

    def exponent_floor(self) -> Fraction:
        lowest = min(e for _, e in self.prefactor)
        return lowest - Fraction(self.s * self.s, 8)

    def to_dict(self) -> dict[str, Any]:
        return {
            "type": "split",
            "s": self.s,
            "t_i": self.t_i,
            "t_j": self.t_j,
            "offset": self.offset,
            "prefactor": [
                [format_rat(c), format_rat(e)] for c, e in self.prefactor
            ],
        }


def beta_from_dict(data: dict[str, Any]) -> BetaForm:
    """
    Build a beta form from its JSON representation.
    """

    match data["type"]:
        case "unit":
            return UnitBeta()
        case "split":
            return SplitBeta(
                s=int(data["s"]),
                t_i=int(data.get("t_i", 0)),
                t_j=int(data.get("t_j", 0)),
                offset=int(data.get("offset", 0)),
                prefactor=tuple(
                    (as_rat(str(c)), as_rat(str(e)))
                    for c, e in data.get("prefactor", [[1, 0]])
                ),
            )
        case _:  # pragma: no cover
            raise ValueError(f"Unknown beta type: {data['type']}")


@dataclass(frozen=True)
class BaileyPair:
    """
    A (claimed) Bailey pair relative to a = q^a_exp.
    """

    name: str
    a_exp: Fraction
    alpha: AlphaRule
    beta: BetaForm | None = None

    @property
    def a(self) -> SignedMonomial:
        return q_power(self.a_exp)

    def alpha_n(self, n: int) -> PuiseuxSeries:
        return self.alpha(n)

    def beta_n(self, n: int, order: RatLike) -> PuiseuxSeries:
        """
        beta_n from its closed form, or from the defining relation if
        no closed form is given.
        """
        order = as_rat(order)
        if self.beta is None:
            return defining_sum(self, n, order)
        return self.beta(n, self.a, order)

    def exponent_floor(self) -> Fraction:
        floors = [self.alpha.exponent_floor(), Fraction(0)]
        if self.beta is not None:
            floors.append(self.beta.exponent_floor())
        return min(floors)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "a": format_rat(self.a_exp),
            "alpha": self.alpha.to_dict(),
            "beta": None if self.beta is None else self.beta.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> BaileyPair:
        beta = data.get("beta")
        return cls(
            name=str(data["name"]),
            a_exp=as_rat(str(data.get("a", "0"))),
            alpha=AlphaRule.from_dict(data["alpha"]),
            beta=None if beta is None else beta_from_dict(beta),
        )


def defining_sum(pair: BaileyPair, n: int, order: RatLike) -> PuiseuxSeries:
    """
    sum_{r=0}^{n} alpha_r / ((q; q)_(n - r) (aq; q)_(n + r)) to `order`.
    """

    order = as_rat(order)
    terms = []
    for r in range(n + 1):
        alpha = pair.alpha_n(r)
        if alpha.is_zero():
            continue
        needed = order - alpha.min_exponent
        kernel = finite_length_reciprocal(
            n - r, Q, needed
        ) * finite_length_reciprocal(n + r, Q, needed, arg=pair.a * Q)
        terms.append((1, (alpha * kernel).truncate(order)))
    if not terms:
        return zero_series(order)
    return linear_combine(terms)


@dataclass
class BaileyReport:
    """
    Result of checking the defining relation for n = 0, ..., n_max.
    """

    name: str
    n_max: int
    order: Fraction
    failure: tuple[int, FirstMismatch] | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {
            "name": self.name,
            "n_max": self.n_max,
            "order": format_rat(self.order),
            "verdict": "pass" if self.passed else "fail",
        }
        if self.failure is not None:
            n, mismatch = self.failure
            result["first_failure"] = {"n": n, **mismatch.to_dict()}
        return result


def check_bailey_pair(
    pair: BaileyPair,
    n_max: int,
    order: RatLike,
) -> BaileyReport:
    """
    Compare the closed form of beta_n with the defining relation for all
    n <= n_max, exactly up to `order`. The report lists the first n for
    which the two differ.
    """

    order = as_rat(order)
    report = BaileyReport(pair.name, n_max, order)
    for n in range(n_max + 1):
        expected = defining_sum(pair, n, order)
        actual = pair.beta_n(n, order)
        result = equal_to_order(actual, expected, order)
        if not isinstance(result, Equal):
            report.failure = (n, result)
            break
    return report


# -----------------------------------------------------------------------------
# Explicit pairs
# -----------------------------------------------------------------------------


def _rules(*polys: Sequence[RatLike]) -> tuple[ExponentPolynomial, ...]:
    return tuple(_poly(p) for p in polys)


def unit_pair(a_exp: RatLike = 0) -> BaileyPair:
    """
    alpha_n = [n = 0], beta_n = 1 / ((q; q)_n (aq; q)_n).
    """
    return BaileyPair(
        name="unit",
        a_exp=as_rat(a_exp),
        alpha=AlphaRule(
            overrides=((0, ((Fraction(0), Fraction(1)),)),),
        ),
        beta=UnitBeta(),
    )


# The split sums sum_{i+j=n} q^((i-j)^2/2 + s(i-j)/2) / ((q;q)_(2i+t) ...)
# give Bailey pairs relative to a = 1 and a = q
ONE_MINUS_Q = ((Fraction(1), Fraction(0)), (Fraction(-1), Fraction(1)))

STANDARD_PAIRS: dict[str, BaileyPair] = {
    "pair-1": BaileyPair(
        name="pair-1",
        a_exp=Fraction(0),
        alpha=AlphaRule(
            even=_rules((2, 1, 0), (2, -1, 0)),
            overrides=((0, ((Fraction(0), Fraction(1)),)),),
        ),
        beta=SplitBeta(s=-1),
    ),
    "pair-2": BaileyPair(
        name="pair-2",
        a_exp=Fraction(1),
        alpha=AlphaRule(
            even=_rules((2, -1, 0)),
            odd=_rules((2, 5, 3)),
        ),
        beta=SplitBeta(s=-1, t_i=1, prefactor=ONE_MINUS_Q),
    ),
    "pair-3": BaileyPair(
        name="pair-3",
        a_exp=Fraction(1),
        alpha=AlphaRule(
            even=_rules((2, 3, 0)),
            odd=_rules((2, 1, -1)),
        ),
        beta=SplitBeta(s=3, t_i=1, prefactor=ONE_MINUS_Q),
    ),
    "pair-4": BaileyPair(
        name="pair-4",
        a_exp=Fraction(0),
        alpha=AlphaRule(
            odd=_rules((2, 3, 1), (2, 1, 0)),
        ),
        beta=SplitBeta(s=-1, t_i=1, t_j=1, offset=1),
    ),
}
