"""
Fast multiplication of dense coefficient lists via Kronecker
substitution: the coefficients are packed into one big integer, the
big integers are multiplied, and the product is unpacked again.
"""

import math
from fractions import Fraction

# Below this length, the schoolbook product is faster than packing
SCHOOLBOOK_THRESHOLD = 16


def _pack(coeffs: list[int], n_bytes: int, half: int) -> int:
    """
    Pack signed digits (each |c| < half) into a non-negative integer by
    shifting every digit by `half`.
    """

    chunks = b"".join((c + half).to_bytes(n_bytes, "little") for c in coeffs)
    return int.from_bytes(chunks, "little")


def _offset(length: int, n_bytes: int, half: int) -> int:
    """
    The packed representation of `length` digits that are all `half`.
    """

    unit = (1).to_bytes(n_bytes, "little") * length
    return half * int.from_bytes(unit, "little")


def mul_schoolbook(
    a: list[int],
    b: list[int],
    length: int | None = None,
) -> list[int]:
    """
    Plain O(n * m) convolution, optionally truncated to `length` terms.
    """

    n_out = len(a) + len(b) - 1
    if length is not None:
        n_out = min(n_out, length)
    if n_out <= 0:
        return []

    result = [0] * n_out
    for i, a_i in enumerate(a):
        if a_i == 0 or i >= n_out:
            continue
        for j, b_j in enumerate(b[: n_out - i]):
            result[i + j] += a_i * b_j
    return result


def mul_integer_lists(
    a: list[int],
    b: list[int],
    length: int | None = None,
) -> list[int]:
    """
    Multiply two dense integer coefficient lists (index = exponent).

    Args:
        a: Coefficients of the first polynomial.
        b: Coefficients of the second polynomial.
        length: If given, only the first `length` coefficients of the
            product are returned (and the inputs are cut accordingly).

    Returns:
        The coefficients of the (truncated) product.
    """

    if length is not None:
        a = a[:length]
        b = b[:length]
    if not a or not b:
        return []
    if min(len(a), len(b)) <= SCHOOLBOOK_THRESHOLD:
        return mul_schoolbook(a, b, length)

    max_a = max(abs(c) for c in a)
    max_b = max(abs(c) for c in b)
    if max_a == 0 or max_b == 0:
        n_out = len(a) + len(b) - 1
        return [0] * (n_out if length is None else min(n_out, length))

    # Every product coefficient is bounded by min(n, m) * max_a * max_b,
    # so a digit of `8 * n_bytes` bits with one spare sign bit suffices
    bound = min(len(a), len(b)) * max_a * max_b
    n_bytes = math.ceil((bound.bit_length() + 2) / 8)
    half = 1 << (8 * n_bytes - 1)

    packed_a = _pack(a, n_bytes, half) - _offset(len(a), n_bytes, half)
    packed_b = _pack(b, n_bytes, half) - _offset(len(b), n_bytes, half)
    n_out = len(a) + len(b) - 1

    # Shift all digits of the product back into [0, 2 * half)
    product = packed_a * packed_b + _offset(n_out, n_bytes, half)
    raw = product.to_bytes(n_out * n_bytes, "little")

    if length is not None:
        n_out = min(n_out, length)
    return [
        int.from_bytes(raw[k * n_bytes : (k + 1) * n_bytes], "little") - half
        for k in range(n_out)
    ]


def clear_denominators(coeffs: list[Fraction]) -> tuple[list[int], int]:
    """
    Write a list of rationals as (integers, common denominator).
    """

    common = 1
    for c in coeffs:
        common = math.lcm(common, c.denominator)
    return [int(c * common) for c in coeffs], common


def mul_rational_lists(
    a: list[Fraction],
    b: list[Fraction],
    length: int | None = None,
) -> list[Fraction]:
    """
    Multiply two dense lists of rational coefficients by clearing the
    denominators and using `mul_integer_lists()`.
    """

    int_a, den_a = clear_denominators(a)
    int_b, den_b = clear_denominators(b)
    product = mul_integer_lists(int_a, int_b, length)
    denominator = den_a * den_b
    return [Fraction(c, denominator) for c in product]


def inverse_rational_list(u: list[Fraction], length: int) -> list[Fraction]:
    """
    Compute the first `length` coefficients of 1 / u(x) by Newton
    iteration g <- g * (2 - u * g). Requires u[0] != 0.
    """

    if not u or u[0] == 0:
        raise ZeroDivisionError("Constant term must be nonzero!")
    if length <= 0:
        return []

    g = [1 / Fraction(u[0])]
    precision = 1
    while precision < length:
        precision = min(2 * precision, length)
        error = mul_rational_lists(u[:precision], g, precision)
        correction = [-c for c in error] + [Fraction(0)] * (
            precision - len(error)
        )
        correction[0] += 2
        g = mul_rational_lists(g, correction, precision)
    return g[:length]
