"""
Signed monomials sign * q^exp, used as arguments and bases of
q-Pochhammer symbols.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from qnahm.series.rationals import RatLike, as_rat, format_rat

MONOMIAL_PATTERN = re.compile(
    r"^(?P<sign>[+-]?)\s*(?:q(?:\^\{?(?P<exp>[-+]?\d+(?:/\d+)?)\}?)?|1)$"
)


@dataclass(frozen=True, order=True)
class SignedMonomial:
    """
    The monomial sign * q^exp with sign in {+1, -1}.
    """

    exp: Fraction
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"Sign must be +1 or -1, not {self.sign}!")
        object.__setattr__(self, "exp", as_rat(self.exp))

    @classmethod
    def parse(cls, text: str) -> SignedMonomial:
        """
        Parse strings like "q", "-q^3", "q^{1/2}", "-q^{-1/4}" or "-1".
        """

        match = MONOMIAL_PATTERN.match(text.strip())
        if match is None:
            raise ValueError(f"Invalid monomial: '{text}'")
        sign = -1 if match.group("sign") == "-" else 1
        if text.strip().lstrip("+-").strip() == "1":
            return cls(Fraction(0), sign)
        exp = match.group("exp")
        return cls(as_rat(exp) if exp is not None else Fraction(1), sign)

    def __mul__(self, other: SignedMonomial) -> SignedMonomial:
        return SignedMonomial(self.exp + other.exp, self.sign * other.sign)

    def __pow__(self, k: int) -> SignedMonomial:
        return SignedMonomial(self.exp * k, self.sign if k % 2 else 1)

    def __neg__(self) -> SignedMonomial:
        return SignedMonomial(self.exp, -self.sign)

    def inverse(self) -> SignedMonomial:
        return SignedMonomial(-self.exp, self.sign)

    def __str__(self) -> str:
        prefix = "-" if self.sign < 0 else ""
        if self.exp == 0:
            return f"{prefix}1"
        if self.exp == 1:
            return f"{prefix}q"
        if self.exp.denominator == 1:
            return f"{prefix}q^{self.exp.numerator}"
        return f"{prefix}q^{{{format_rat(self.exp)}}}"

    def to_dict(self) -> dict[str, Any]:
        return {"sign": self.sign, "exp": format_rat(self.exp)}


def q_power(exp: RatLike, sign: int = 1) -> SignedMonomial:
    """
    Shorthand for `SignedMonomial(exp, sign)`.
    """
    return SignedMonomial(as_rat(exp), sign)


Q = q_power(1)
