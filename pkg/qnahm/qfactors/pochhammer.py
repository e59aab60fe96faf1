"""
q-Pochhammer symbols (a; b)_n and (a; b)_inf with signed arguments and
signed bases, and Gaussian binomial coefficients.

Internally, every Pochhammer symbol is a product of binomials
(1 + c * x^m) with c in {+1, -1}, where x = q^(1/D) is the base variable
of a common exponent lattice. The expansions below work on dense lists
of integers, which keeps all intermediate results exact and fast.
"""

import math
from fractions import Fraction
from typing import Iterable, Iterator

from qnahm.qfactors.monomials import SignedMonomial
from qnahm.series.puiseux import PuiseuxSeries, one, zero_series
from qnahm.series.rationals import (
    INFINITY,
    Order,
    RatLike,
    as_rat,
    floor_index,
    is_infinite,
    lcm_of_denominators,
)


class DivergentProduct(ValueError):
    pass


# -----------------------------------------------------------------------------
# Low-level helpers on integer coefficient lists
# -----------------------------------------------------------------------------


def multiply_binomial(coeffs: list[int], c: int, m: int) -> None:
    """
    In-place multiplication by (1 + c * x^m), truncated to len(coeffs).
    """

    if m == 0:
        for j in range(len(coeffs)):
            coeffs[j] *= 1 + c
        return
    for j in range(len(coeffs) - 1, m - 1, -1):
        coeffs[j] += c * coeffs[j - m]


def divide_binomial(coeffs: list[int], c: int, m: int) -> None:
    """
    In-place division by (1 + c * x^m) for m > 0, i.e., the geometric
    recurrence g_j = f_j - c * g_(j - m).
    """

    for j in range(m, len(coeffs)):
        coeffs[j] -= c * coeffs[j - m]


def binomial_exponents(
    arg: SignedMonomial,
    base: SignedMonomial,
    denom: int,
    start: int,
    stop: int | None,
    top: int | None = None,
) -> Iterator[tuple[int, int]]:
    """
    Yield (c, m) such that 1 - arg * base^k = 1 + c * x^m for k = start,
    start + 1, ..., stop - 1 (or until m exceeds `top` if `stop` is None).
    """

    k = start
    while stop is None or k < stop:
        exponent = (arg.exp + k * base.exp) * denom
        if exponent.denominator != 1:
            raise ValueError(f"Lattice 1/{denom} is too coarse for {arg}!")
        m = exponent.numerator
        if stop is None and top is not None and m > top:
            return
        c = -arg.sign * (base.sign if k % 2 else 1)
        yield c, m
        k += 1


def binomial_product(
    factors: Iterable[tuple[int, int, int]],
    top: int | None,
) -> tuple[Fraction, int, list[int]]:
    """
    Expand prod (1 + c * x^m)^e, truncated at x^top.

    Factors with m < 0 are rewritten as c * x^m * (1 + c * x^-m), and
    factors with m = 0 are constants (1 + c).

    Args:
        factors: Triples (c, m, e) with c in {+1, -1}.
        top: Highest lattice index to keep (None: expand exactly; this
            requires all powers e to be non-negative).

    Returns:
        A tuple (constant, shift, coeffs) that represents the product
        constant * x^shift * sum_k coeffs[k] * x^k.
    """

    constant = Fraction(1)
    shift = 0
    positive: list[tuple[int, int, int]] = []

    for c, m, e in factors:
        if e == 0:
            continue
        if m == 0:
            if c == -1 and e < 0:
                raise ZeroDivisionError("Division by a vanishing factor!")
            constant *= Fraction(1 + c) ** e
        elif m < 0:
            shift += m * e
            constant *= c if e % 2 else 1
            positive.append((c, -m, e))
        else:
            positive.append((c, m, e))

    if top is None:
        if any(e < 0 for _, _, e in positive):
            raise ValueError("Exact expansion requires non-negative powers!")
        length = sum(m * e for _, m, e in positive) + 1
    else:
        length = top - shift + 1
    if constant == 0 or length <= 0:
        return constant, shift, []

    coeffs = [0] * length
    coeffs[0] = 1
    for c, m, e in positive:
        if m >= length:
            continue
        for _ in range(abs(e)):
            if e > 0:
                multiply_binomial(coeffs, c, m)
            else:
                divide_binomial(coeffs, c, m)
    return constant, shift, coeffs


def _to_series(
    constant: Fraction,
    shift: int,
    coeffs: list[int],
    denom: int,
    order: Order,
) -> PuiseuxSeries:
    if constant == 0:
        return zero_series()
    return PuiseuxSeries([constant * c for c in coeffs], shift, denom, order)


def lattice_for(*exponents: RatLike) -> int:
    """
    Smallest lattice denominator on which all given exponents live.
    """
    return lcm_of_denominators(as_rat(e) for e in exponents)


# -----------------------------------------------------------------------------
# Public operations
# -----------------------------------------------------------------------------


def poch_finite(
    a: SignedMonomial,
    base: SignedMonomial,
    n: int,
    order: Order | RatLike = INFINITY,
) -> PuiseuxSeries:
    """
    The finite product (a; base)_n = (1 - a)(1 - a base)...(1 - a base^(n-1)).

    Args:
        a: Argument of the Pochhammer symbol.
        base: Base of the Pochhammer symbol.
        n: Number of factors (must be >= 0).
        order: Truncation order (default: exact polynomial).

    Returns:
        The (truncated) expansion.
    """

    if n < 0:
        raise ValueError("Pochhammer symbols with n < 0 are not supported!")
    if n == 0:
        return one().truncate(order) if not _is_inf(order) else one()

    denom = lattice_for(a.exp, base.exp)
    order = INFINITY if _is_inf(order) else as_rat(order)
    factors = [(c, m, 1) for c, m in binomial_exponents(a, base, denom, 0, n)]
    constant, shift, coeffs = binomial_product(
        factors, floor_index(order, denom)
    )
    return _to_series(constant, shift, coeffs, denom, order)


def poch_infinite(
    a: SignedMonomial,
    base: SignedMonomial,
    order: RatLike,
    power: int = 1,
) -> PuiseuxSeries:
    """
    The infinite product (a; base)_inf^power, truncated to `order`.

    Raises:
        DivergentProduct: If a.exp <= 0 or base.exp <= 0.
    """

    check_convergent(a, base)
    order = as_rat(order)
    denom = lattice_for(a.exp, base.exp)
    top = math.floor(order * denom)
    factors = [
        (c, m, power)
        for c, m in binomial_exponents(a, base, denom, 0, None, top)
    ]
    constant, shift, coeffs = binomial_product(factors, top)
    return _to_series(constant, shift, coeffs, denom, order)


def check_convergent(a: SignedMonomial, base: SignedMonomial) -> None:
    if base.exp <= 0:
        raise DivergentProduct(f"Base {base} must have a positive exponent!")
    if a.exp <= 0:
        raise DivergentProduct(
            f"Argument {a} must have a positive exponent for (a; {base})_inf!"
        )


def finite_length_reciprocal(
    n: int,
    base: SignedMonomial,
    order: RatLike,
    arg: SignedMonomial | None = None,
) -> PuiseuxSeries:
    """
    1 / (arg; base)_n with the convention 1 / (arg; base)_n = 0 for n < 0.
    By default, `arg` equals `base`, which gives 1 / (q; q)_n for q = base.
    """

    if n < 0:
        return zero_series()

    arg = base if arg is None else arg
    order = as_rat(order)
    if n == 0:
        return one(order)

    denom = lattice_for(arg.exp, base.exp)
    factors = [
        (c, m, -1) for c, m in binomial_exponents(arg, base, denom, 0, n)
    ]
    constant, shift, coeffs = binomial_product(
        factors, math.floor(order * denom)
    )
    return _to_series(constant, shift, coeffs, denom, order)


def gaussian_coefficients(n: int, m: int) -> list[int]:
    """
    Coefficients of the Gaussian polynomial [n, m] in the variable y.
    """

    if m < 0 or m > n:
        return []
    m = min(m, n - m)
    length = m * (n - m) + 1
    coeffs = [0] * length
    coeffs[0] = 1
    for i in range(1, m + 1):
        multiply_binomial(coeffs, -1, n - m + i)
    for i in range(1, m + 1):
        divide_binomial(coeffs, -1, i)
    return coeffs


def qbinomial(
    n: int,
    m: int,
    base: SignedMonomial,
    order: Order | RatLike = INFINITY,
) -> PuiseuxSeries:
    """
    The Gaussian coefficient (b; b)_n / ((b; b)_m (b; b)_(n - m)) in the
    base b, which is zero unless 0 <= m <= n.
    """

    if base.exp <= 0:
        raise ValueError(f"Base {base} must have a positive exponent!")

    gaussian = gaussian_coefficients(n, m)
    if not gaussian:
        return zero_series()

    # Map y^j -> base^j = sign^j * q^(j * exp)
    p, denom = base.exp.numerator, base.exp.denominator
    values = [Fraction(0)] * ((len(gaussian) - 1) * p + 1)
    for j, c in enumerate(gaussian):
        values[j * p] = Fraction(c if base.sign == 1 or j % 2 == 0 else -c)
    result = PuiseuxSeries(values, 0, denom)
    return result if _is_inf(order) else result.truncate(order)


class PochhammerTable:
    """
    Incrementally extended expansions of (arg; base)_n (or of their
    reciprocals) for n = 0, 1, 2, ..., all truncated at lattice index
    `top` on the lattice (1 / denom) * Z.

    The lists returned by `get()` are shared and must not be modified.
    """

    def __init__(
        self,
        arg: SignedMonomial,
        base: SignedMonomial,
        denom: int,
        top: int,
        reciprocal: bool,
    ) -> None:

        if base.exp <= 0 or arg.exp < 0:
            raise ValueError(
                f"Unsupported Pochhammer symbol ({arg}; {base})_n: need a "
                "positive base exponent and a non-negative argument exponent!"
            )
        if reciprocal and arg.exp == 0 and arg.sign == 1:
            raise ZeroDivisionError(f"1 / ({arg}; {base})_n is undefined!")

        self.arg = arg
        self.base = base
        self.denom = denom
        self.top = top
        self.reciprocal = reciprocal

        first: list[int] = [0] * (top + 1)
        if top >= 0:
            first[0] = 1
        self._lists = [first]
        self._scale = [Fraction(1)]

    def get(self, n: int) -> tuple[Fraction, list[int]]:
        """
        Return (scale, coeffs) with (arg; base)_n^(+/-1) = scale * coeffs.
        """

        while len(self._lists) <= n:
            k = len(self._lists) - 1
            c, m = next(
                binomial_exponents(self.arg, self.base, self.denom, k, k + 1)
            )
            previous = self._lists[-1]
            scale = self._scale[-1]
            if m == 0:
                factor = Fraction(1 + c)
                scale = scale / factor if self.reciprocal else scale * factor
                current = previous
            elif m > self.top:
                current = previous
            else:
                current = list(previous)
                if self.reciprocal:
                    divide_binomial(current, c, m)
                else:
                    multiply_binomial(current, c, m)
            self._lists.append(current)
            self._scale.append(scale)
        return self._scale[n], self._lists[n]


def _is_inf(order: Order | RatLike) -> bool:
    return isinstance(order, float) and is_infinite(order)
