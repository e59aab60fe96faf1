"""
Data types for (partial) Nahm sums and general q-hypergeometric sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from qnahm.qfactors.monomials import SignedMonomial, q_power
from qnahm.series.rationals import (
    RatLike,
    as_rat,
    format_rat,
    lcm_of_denominators,
)

Vector = tuple[int, ...]


Matrix = tuple[tuple[Fraction, ...], ...]


def _rat_matrix(rows: Sequence[Sequence[RatLike]]) -> Matrix:
    return tuple(tuple(as_rat(x) for x in row) for row in rows)


@dataclass(frozen=True)
class QuadraticForm:
    """
    The polynomial Q(n) = 1/2 n^T A n + n^T B + C in the indices n.
    """

    A: Matrix
    B: tuple[Fraction, ...]
    C: Fraction = Fraction(0)

    def __post_init__(self) -> None:

        A = _rat_matrix(self.A)
        B = tuple(as_rat(x) for x in self.B)
        r = len(B)
        if len(A) != r or any(len(row) != r for row in A):
            raise ValueError(f"A must be a {r}x{r} matrix!")
        if any(A[i][j] != A[j][i] for i in range(r) for j in range(r)):
            raise ValueError("A must be symmetric!")

        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", as_rat(self.C))

    @property
    def rank(self) -> int:
        return len(self.B)

    def __call__(self, n: Sequence[int]) -> Fraction:
        r = self.rank
        total = self.C
        for i in range(r):
            total += self.B[i] * n[i]
            total += self.A[i][i] * n[i] * n[i] / 2
            for j in range(i + 1, r):
                total += self.A[i][j] * n[i] * n[j]
        return total

    def coefficients(self) -> list[Fraction]:
        """
        All monomial coefficients (used to find the exponent lattice).
        """
        r = self.rank
        values = [self.C, *self.B]
        for i in range(r):
            values.append(self.A[i][i] / 2)
            values.extend(self.A[i][j] for j in range(i + 1, r))
        return values

    def lattice(self) -> int:
        return lcm_of_denominators(self.coefficients())

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coefficients())

    def with_constant(self, C: RatLike) -> QuadraticForm:
        return QuadraticForm(self.A, self.B, as_rat(C))

    def swapped(self) -> QuadraticForm:
        """
        Interchange the two indices of a rank-two form.
        """
        if self.rank != 2:
            raise ValueError("Only rank-two forms can be swapped!")
        (a, b), (_, c) = self.A
        return QuadraticForm(((c, b), (b, a)), self.B[::-1], self.C)

    def to_dict(self) -> dict[str, Any]:
        return {
            "A": [[format_rat(x) for x in row] for row in self.A],
            "B": [format_rat(x) for x in self.B],
            "C": format_rat(self.C),
        }


def zero_form(rank: int) -> QuadraticForm:
    return QuadraticForm(
        tuple((Fraction(0),) * rank for _ in range(rank)),
        (Fraction(0),) * rank,
    )


@dataclass(frozen=True)
class QuadExpr(QuadraticForm):
    """
    The (A, B, C) part of a Nahm sum: A symmetric and nonzero, r <= 2.
    """

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.rank not in (1, 2):
            raise ValueError("Only rank one and rank two are supported!")
        if all(x == 0 for row in self.A for x in row):
            raise ValueError("A must be nonzero!")


def quad_matrix(a: RatLike, b: RatLike, c: RatLike) -> Matrix:
    """
    The symmetric matrix M(a, b, c) = ((a, b), (b, c)).
    """
    a, b, c = as_rat(a), as_rat(b), as_rat(c)
    return ((a, b), (b, c))


@dataclass(frozen=True)
class LatticeCoset:
    """
    The coset v + L, where the columns of `basis` generate L.
    """

    basis: tuple[Vector, ...]
    shift: Vector

    def __post_init__(self) -> None:

        basis = tuple(tuple(int(x) for x in row) for row in self.basis)
        shift = tuple(int(x) for x in self.shift)
        r = len(shift)
        if len(basis) != r or any(len(row) != r for row in basis):
            raise ValueError(f"Basis must be a {r}x{r} integer matrix!")
        if r == 1:
            det = basis[0][0]
        elif r == 2:
            det = basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0]
        else:
            raise ValueError("Only rank one and rank two are supported!")
        if det == 0:
            raise ValueError("Lattice basis must be nonsingular!")

        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "shift", shift)

    @property
    def rank(self) -> int:
        return len(self.shift)

    @property
    def index(self) -> int:
        """
        The index [Z^r : L] = |det(basis)|.
        """
        if self.rank == 1:
            return abs(self.basis[0][0])
        (a, b), (c, d) = self.basis
        return abs(a * d - b * c)

    def swapped(self) -> LatticeCoset:
        (a, b), (c, d) = self.basis
        return LatticeCoset(((d, c), (b, a)), self.shift[::-1])

    def to_dict(self) -> dict[str, Any]:
        return {"v": list(self.shift), "L": [list(row) for row in self.basis]}


def full_lattice(rank: int) -> LatticeCoset:
    basis = tuple(
        tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)
    )
    return LatticeCoset(basis, (0,) * rank)


def diagonal_coset(
    moduli: Sequence[int],
    shift: Sequence[int],
) -> LatticeCoset:
    """
    The coset v + (m_1 Z x ... x m_r Z).
    """
    r = len(moduli)
    basis = tuple(
        tuple(moduli[i] if i == j else 0 for j in range(r)) for i in range(r)
    )
    return LatticeCoset(basis, tuple(shift))


@dataclass(frozen=True)
class NahmSpec:
    """
    A quadruple (A, B, C, v + L).
    """

    quad: QuadExpr
    coset: LatticeCoset

    def __post_init__(self) -> None:
        if self.quad.rank != self.coset.rank:
            raise ValueError("Quadratic form and lattice ranks differ!")

    @classmethod
    def create(
        cls,
        A: Sequence[Sequence[RatLike]],
        B: Sequence[RatLike],
        C: RatLike = 0,
        v: Sequence[int] | None = None,
        L: Sequence[Sequence[int]] | None = None,
    ) -> NahmSpec:
        rank = len(B)
        coset = full_lattice(rank)
        if L is not None or v is not None:
            coset = LatticeCoset(
                basis=tuple(tuple(r) for r in (L or coset.basis)),
                shift=tuple(v or (0,) * rank),
            )
        quad = QuadExpr(_rat_matrix(A), tuple(as_rat(b) for b in B), as_rat(C))
        return cls(quad, coset)

    def with_constant(self, C: RatLike) -> NahmSpec:
        quad = QuadExpr(self.quad.A, self.quad.B, as_rat(C))
        return NahmSpec(quad, self.coset)

    def swapped(self) -> NahmSpec:
        quad = self.quad.swapped()
        return NahmSpec(QuadExpr(quad.A, quad.B, quad.C), self.coset.swapped())

    def to_sumspec(self) -> SumSpec:
        """
        The same sum, written as a general sum with 1 / (q; q)_(n_i).
        """
        rank = self.quad.rank
        q = q_power(1)
        denominators = tuple(
            PochTerm(q, q, AffineForm.index(i, rank)) for i in range(rank)
        )
        return SumSpec(
            exponent=QuadraticForm(self.quad.A, self.quad.B, self.quad.C),
            denominator=denominators,
            coset=self.coset,
        )

    def to_dict(self) -> dict[str, Any]:
        return {**self.quad.to_dict(), **self.coset.to_dict()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> NahmSpec:
        return cls.create(
            A=[[as_rat(str(x)) for x in row] for row in data["A"]],
            B=[as_rat(str(x)) for x in data["B"]],
            C=as_rat(str(data.get("C", "0"))),
            v=data.get("v"),
            L=data.get("L"),
        )


@dataclass(frozen=True)
class AffineForm:
    """
    The integer affine form l(n) = const + sum_i coeffs[i] * n_i.
    """

    coeffs: Vector
    const: int = 0

    @classmethod
    def index(cls, i: int, rank: int, const: int = 0) -> AffineForm:
        return cls(tuple(1 if j == i else 0 for j in range(rank)), const)

    def __call__(self, n: Sequence[int]) -> int:
        return self.const + sum(c * x for c, x in zip(self.coeffs, n))

    def depends_on(self, i: int) -> bool:
        return self.coeffs[i] != 0


@dataclass(frozen=True)
class PochTerm:
    """
    A finite Pochhammer symbol (arg; base)_length(n).
    """

    arg: SignedMonomial
    base: SignedMonomial
    length: AffineForm


@dataclass(frozen=True)
class SumSpec:
    """
    A q-hypergeometric sum over n in (coset) and n >= 0 (or n in Z for
    bilateral rank-one sums):

        sum_n (-1)^sign(n) q^exponent(n) prod numerator / prod denominator

    where the numerator and denominator are finite Pochhammer symbols
    whose lengths are affine in n. Denominators of negative length
    vanish by the convention 1 / (q; q)_n = 0 for n < 0.
    """

    exponent: QuadraticForm
    sign: QuadraticForm | None = None
    numerator: tuple[PochTerm, ...] = field(default_factory=tuple)
    denominator: tuple[PochTerm, ...] = field(default_factory=tuple)
    coset: LatticeCoset | None = None
    bilateral: bool = False

    def __post_init__(self) -> None:

        r = self.exponent.rank
        if r not in (1, 2):
            raise ValueError("Only one or two indices are supported!")
        if self.sign is not None and self.sign.rank != r:
            raise ValueError("Sign character has the wrong rank!")
        if self.coset is not None and self.coset.rank != r:
            raise ValueError("Coset has the wrong rank!")
        if self.bilateral and r != 1:
            raise ValueError("Only rank-one sums can be bilateral!")
        for term in self.numerator + self.denominator:
            if len(term.length.coeffs) != r:
                raise ValueError("Pochhammer length has the wrong rank!")
            if term.base.exp <= 0:
                raise ValueError(f"Base {term.base} must have exp > 0!")
            if term.arg.exp < 0:
                raise ValueError(
                    f"Argument {term.arg} must have a non-negative exponent!"
                )

    @property
    def rank(self) -> int:
        return self.exponent.rank

    def lattice(self) -> int:
        """
        Lattice denominator D such that every term lives on (1/D) * Z.
        """
        values = list(self.exponent.coefficients())
        for term in self.numerator + self.denominator:
            values.extend([term.arg.exp, term.base.exp])
        return lcm_of_denominators(values)

    def sign_at(self, n: Sequence[int]) -> int:
        if self.sign is None:
            return 1
        value = self.sign(n)
        if value.denominator != 1:
            raise ValueError(f"Sign exponent is not an integer at n={n}!")
        return -1 if value.numerator % 2 else 1
