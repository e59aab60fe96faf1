"""
Parsers for the expression strings in catalog files.

Exponents and lengths are polynomials in the summation indices, written
in the usual notation ("3/2*i^2 + i*j - 1/2*i"); braces may be used as
parentheses. Monomials are +/- q^e. Products are built from

    (a_1, ..., a_k; b)_inf     (a; b)_n     J_m     J_{a,m}     Jbar_{a,m}
    q^{e}     integers and fractions     ( ... )

combined by juxtaposition, `*`, `/` and integer powers `^k`.
"""

import re
from fractions import Fraction
from tokenize import TokenError
from typing import Sequence

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from qnahm.nahm.specs import AffineForm, PochTerm, QuadraticForm
from qnahm.qfactors.monomials import SignedMonomial
from qnahm.qfactors.products import (
    ProductSpec,
    jacobi_j,
    jacobi_j_am,
    jacobi_jbar_am,
    poch_spec,
)

TRANSFORMATIONS = standard_transformations + (
    implicit_multiplication,
    convert_xor,
)

Q_SYMBOL = sympy.Symbol("q")

INFINITE_LENGTHS = ("inf", "infty", "\\infty")


class ParseError(ValueError):
    pass


# -----------------------------------------------------------------------------
# Polynomials, rationals and monomials
# -----------------------------------------------------------------------------


def _sympify(text: str, names: Sequence[str]) -> sympy.Expr:
    """
    Parse `text` with sympy, allowing only the given symbol names.
    """

    cleaned = str(text).replace("{", "(").replace("}", ")")
    local_dict = {name: sympy.Symbol(name) for name in names}
    try:
        expr = parse_expr(
            cleaned,
            local_dict=local_dict,
            transformations=TRANSFORMATIONS,
        )
    except (
        AttributeError,
        NameError,
        SyntaxError,
        TokenError,
        TypeError,
        ValueError,
        sympy.SympifyError,
    ) as e:
        raise ParseError(f"Cannot parse '{text}': {e}") from e

    if not isinstance(expr, sympy.Expr):
        raise ParseError(f"'{text}' is not an expression!")
    unknown = sorted(str(s) for s in expr.free_symbols if str(s) not in names)
    if unknown:
        raise ParseError(f"Unknown symbol(s) {unknown} in '{text}'!")
    return expr


def _to_fraction(value: sympy.Expr, text: str) -> Fraction:
    if not value.is_Rational:
        raise ParseError(f"'{value}' in '{text}' is not a rational number!")
    return Fraction(int(value.p), int(value.q))


def parse_rational(text: str | int) -> Fraction:
    """
    Parse an exact rational number (e.g., "-3/4", "2*(1/2)" or "1/2+1").
    """
    return _to_fraction(_sympify(str(text), []), str(text))


def _polynomial(
    text: str,
    indices: Sequence[str],
    max_degree: int,
) -> dict[tuple[int, ...], Fraction]:
    """
    Monomial exponents and coefficients of a polynomial in the indices.
    """

    expr = _sympify(text, indices)
    symbols = [sympy.Symbol(name) for name in indices]
    try:
        poly = sympy.Poly(sympy.expand(expr), *symbols)
    except sympy.PolynomialError as e:
        raise ParseError(f"'{text}' is not a polynomial: {e}") from e
    if poly.total_degree() > max_degree:
        raise ParseError(
            f"'{text}' has degree {poly.total_degree()} > {max_degree}!"
        )
    return {
        monom: _to_fraction(coeff, text) for monom, coeff in poly.terms()
    }


def parse_quadratic(text: str, indices: Sequence[str]) -> QuadraticForm:
    """
    Parse a polynomial of degree <= 2 into a `QuadraticForm`.
    """

    r = len(indices)
    A = [[Fraction(0)] * r for _ in range(r)]
    B = [Fraction(0)] * r
    C = Fraction(0)
    for monom, c in _polynomial(text, indices, 2).items():
        support = [k for k, e in enumerate(monom) if e]
        match sum(monom), support:
            case 0, _:
                C += c
            case 1, [k]:
                B[k] += c
            case 2, [k]:
                A[k][k] += 2 * c
            case 2, [k, m]:
                A[k][m] += c
                A[m][k] += c
            case _:  # pragma: no cover
                raise ParseError(f"Unexpected monomial {monom} in '{text}'!")
    return QuadraticForm(
        tuple(tuple(row) for row in A), tuple(B), C
    )


def parse_affine(text: str, indices: Sequence[str]) -> AffineForm:
    """
    Parse an integer affine form like "2*i + j + 1".
    """

    coeffs = [0] * len(indices)
    const = 0
    for monom, c in _polynomial(text, indices, 1).items():
        if c.denominator != 1:
            raise ParseError(f"Length '{text}' has non-integer coefficients!")
        if sum(monom) == 0:
            const += int(c)
        else:
            coeffs[monom.index(1)] += int(c)
    return AffineForm(tuple(coeffs), const)


def parse_monomial(text: str) -> SignedMonomial:
    """
    Parse a signed monomial like "q", "-q^{1/2}", "q^2*q^{-1/4}" or "-1".
    """

    expr = _sympify(text, ["q"])
    coeff, rest = expr.as_coeff_Mul()
    if coeff not in (1, -1):
        raise ParseError(f"'{text}' is not a monomial +/- q^e!")
    if rest == 1:
        return SignedMonomial(Fraction(0), int(coeff))
    base, exponent = rest.as_base_exp()
    if base != Q_SYMBOL:
        raise ParseError(f"'{text}' is not a monomial +/- q^e!")
    return SignedMonomial(_to_fraction(exponent, text), int(coeff))


# -----------------------------------------------------------------------------
# Pochhammer symbols
# -----------------------------------------------------------------------------


def split_top_level(text: str, separator: str) -> list[str]:
    """
    Split `text` at every `separator` that is not nested inside
    parentheses or braces.
    """

    parts = []
    depth = 0
    start = 0
    for k, char in enumerate(text):
        if char in "({":
            depth += 1
        elif char in ")}":
            depth -= 1
        elif char == separator and depth == 0:
            parts.append(text[start:k])
            start = k + 1
    parts.append(text[start:])
    return parts


def _matching_parenthesis(text: str, start: int) -> int:
    depth = 0
    for k in range(start, len(text)):
        if text[k] in "({":
            depth += 1
        elif text[k] in ")}":
            depth -= 1
            if depth == 0:
                return k
    raise ParseError(f"Unbalanced parentheses in '{text}'!")


POCHHAMMER_PATTERN = re.compile(
    r"^\((?P<inner>.*)\)_(?:\{(?P<braced>[^{}]*)\}|(?P<plain>[\w\\]+))$"
)


def parse_poch_terms(text: str, indices: Sequence[str]) -> list[PochTerm]:
    """
    Parse "(a_1, ..., a_k; b)_{l(n)}" into one `PochTerm` per argument.
    """

    compact = "".join(text.split())
    match = POCHHAMMER_PATTERN.match(compact)
    if match is None:
        raise ParseError(f"'{text}' is not a Pochhammer symbol!")
    parts = split_top_level(match.group("inner"), ";")
    if len(parts) != 2:
        raise ParseError(f"'{text}' needs exactly one ';'!")

    length_text = match.group("braced") or match.group("plain")
    length = parse_affine(length_text, indices)
    base = parse_monomial(parts[1])
    return [
        PochTerm(parse_monomial(arg), base, length)
        for arg in split_top_level(parts[0], ",")
    ]


# -----------------------------------------------------------------------------
# Product expressions
# -----------------------------------------------------------------------------

J_PATTERN = re.compile(
    r"(?P<name>Jbar|J)_(?:\{(?P<braced>[^{}]*)\}|(?P<plain>\d+))"
)
MONOMIAL_ATOM = re.compile(
    r"q(?:\^(?:\{(?P<braced>[^{}]*)\}|(?P<plain>-?\d+)))?"
)
NUMBER_ATOM = re.compile(r"\d+(?:/\d+)?")
POWER_PATTERN = re.compile(
    r"\^(?:\{(?P<braced>\s*-?\d+\s*)\}|(?P<plain>-?\d+))"
)
LENGTH_PATTERN = re.compile(
    r"_(?:\{(?P<braced>[^{}]*)\}|(?P<plain>[\w\\]+))"
)


class _ProductParser:
    """
    Recursive-descent parser for product expressions.
    """

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def parse(self) -> ProductSpec:
        result = self._expression()
        self._skip()
        if self.pos != len(self.text):
            raise self._error("Unexpected input")
        return result

    def _error(self, message: str) -> ParseError:
        return ParseError(
            f"{message} at position {self.pos} of '{self.text}'!"
        )

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expression(self) -> ProductSpec:
        result = self._power()
        while (char := self._peek()) not in ("", ")"):
            if char == "*":
                self.pos += 1
                result = result * self._power()
            elif char == "/":
                self.pos += 1
                result = result * self._power().inverse()
            else:
                result = result * self._power()
        return result

    def _power(self) -> ProductSpec:
        base = self._atom()
        self._skip()
        match = POWER_PATTERN.match(self.text, self.pos)
        if match is None:
            return base
        self.pos = match.end()
        return base ** int(match.group("braced") or match.group("plain"))

    def _atom(self) -> ProductSpec:
        char = self._peek()
        if char == "(":
            return self._parenthesis()
        if char == "-":
            self.pos += 1
            return self._atom().scaled(-1)
        if match := J_PATTERN.match(self.text, self.pos):
            self.pos = match.end()
            symbol = match.group("braced") or match.group("plain")
            return _jacobi(match.group("name"), symbol)
        if match := MONOMIAL_ATOM.match(self.text, self.pos):
            self.pos = match.end()
            exponent = match.group("braced") or match.group("plain") or "1"
            return ProductSpec(monomial_exp=parse_rational(exponent))
        if match := NUMBER_ATOM.match(self.text, self.pos):
            self.pos = match.end()
            return ProductSpec(constant=Fraction(match.group()))
        raise self._error("Expected a factor")

    def _parenthesis(self) -> ProductSpec:
        close = _matching_parenthesis(self.text, self.pos)
        inner = self.text[self.pos + 1 : close]
        parts = split_top_level(inner, ";")

        # A plain group
        if len(parts) == 1:
            self.pos = close + 1
            return _ProductParser(inner).parse()
        if len(parts) != 2:
            raise self._error("Too many ';' in Pochhammer symbol")

        match = LENGTH_PATTERN.match(self.text, close + 1)
        if match is None:
            raise self._error("Pochhammer symbol without length")
        self.pos = match.end()
        text = "".join((match.group("braced") or match.group("plain")).split())
        length = None if text in INFINITE_LENGTHS else parse_rational(text)
        if length is not None and (length.denominator != 1 or length < 0):
            raise self._error(f"Invalid length '{text}'")

        base = parse_monomial(parts[1])
        result = ProductSpec()
        for arg in split_top_level(parts[0], ","):
            result = result * poch_spec(
                parse_monomial(arg),
                base,
                None if length is None else int(length),
            )
        return result


def _jacobi(name: str, text: str) -> ProductSpec:
    values = [parse_rational(x) for x in text.split(",")]
    match name, values:
        case "J", [m]:
            return jacobi_j(m)
        case "J", [a, m]:
            return jacobi_j_am(a, m)
        case "Jbar", [a, m]:
            return jacobi_jbar_am(a, m)
        case _:
            raise ParseError(f"Invalid J-symbol '{name}_{{{text}}}'!")


def parse_product(text: str) -> ProductSpec:
    """
    Parse a product expression into a `ProductSpec`.

    Raises:
        ParseError: If the expression is malformed or contains a
            product that does not converge.
    """

    try:
        return _ProductParser(str(text)).parse()
    except ParseError:
        raise
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"Invalid product '{text}': {e}") from e
