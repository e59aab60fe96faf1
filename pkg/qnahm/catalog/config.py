"""
Define parsers for the records of an identity catalog.

A catalog file (YAML, or JSON as a subset of YAML) is a list of entries.
All exponents, lengths, monomials and products are strings that are
parsed by `qnahm.catalog.parsing`; numbers may also be given as plain
integers.
"""

from typing import Annotated, Any, Literal

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    field_validator,
    model_validator,
)

# Rationals and expressions are kept as strings until they are parsed
Text = Annotated[str, BeforeValidator(str)]


class CosetConfig(BaseModel):
    """
    Parser class for a lattice coset v + L.
    """

    model_config = ConfigDict(extra="forbid")

    v: list[int] = Field(
        ...,
        description="Shift vector v of the coset.",
    )
    L: list[list[int]] = Field(
        ...,
        description=(
            "Integer basis of the sublattice L, e.g., [[2, 0], [0, 1]] "
            "for 2Z x Z."
        ),
    )


class SumConfig(BaseModel):
    """
    Parser class for a general q-hypergeometric sum.
    """

    model_config = ConfigDict(extra="forbid")

    indices: list[str] = Field(
        default=["n"],
        description="Names of the summation indices (one or two).",
    )
    exponent: Text = Field(
        ...,
        description="Exponent of q, a polynomial of degree <= 2.",
    )
    sign: Text | None = Field(
        default=None,
        description="Polynomial s(n) for a sign factor (-1)^s(n).",
    )
    numerator: list[Text] = Field(
        default=[],
        description=(
            "Finite Pochhammer symbols like '(q;q^2)_{n}' or "
            "'(q,-q;q^2)_{2*i+1}' in the numerator."
        ),
    )
    denominator: list[Text] = Field(
        default=[],
        description="Finite Pochhammer symbols in the denominator.",
    )
    powers: dict[str, Text] = Field(
        default={},
        description=(
            "Extra factors u^i for an index i and a monomial u (e.g., "
            "'-q^{1/2}'), which are absorbed into the exponent and sign."
        ),
    )
    coset: CosetConfig | None = Field(
        default=None,
        description="Restrict the sum to a coset v + L.",
    )
    bilateral: bool = Field(
        default=False,
        description="Sum over all integers (rank one only).",
    )

    @field_validator("indices")
    def check_indices(cls: Any, v: list[str]) -> list[str]:
        if len(v) not in (1, 2) or len(set(v)) != len(v):
            raise ValueError(f"Need one or two distinct indices, got {v}!")
        if "q" in v:
            raise ValueError("`q` cannot be used as a summation index!")
        return v


class NahmConfig(BaseModel):
    """
    Parser class for a partial Nahm sum (A, B, C, v + L).
    """

    model_config = ConfigDict(extra="forbid")

    A: list[list[Text]] = Field(
        ...,
        description="Symmetric matrix A (1x1 or 2x2).",
    )
    B: list[Text] = Field(
        ...,
        description="Vector B.",
    )
    C: Text = Field(
        default="0",
        description="Scalar C.",
    )
    v: list[int] | None = Field(
        default=None,
        description="Coset shift v (default: zero vector).",
    )
    L: list[list[int]] | None = Field(
        default=None,
        description="Sublattice basis (default: the full lattice).",
    )


class TermConfig(BaseModel):
    """
    Parser class for one term `weight * product * (sum or Nahm sum)` on
    one side of an identity.
    """

    model_config = ConfigDict(extra="forbid")

    weight: Text = Field(
        default="1",
        description="Rational weight of the term.",
    )
    product: Text | None = Field(
        default=None,
        description=(
            "Product expression, e.g., '(q^8;q^8)_inf / (q;q^2)_inf^2' "
            "or 'J_2^3 J_{3,14} / (q J_1^2)'."
        ),
    )
    sum: SumConfig | None = Field(
        default=None,
        description="A general sum that multiplies the product.",
    )
    nahm: NahmConfig | None = Field(
        default=None,
        description="A partial Nahm sum that multiplies the product.",
    )

    @model_validator(mode="after")
    def check_single_sum(self) -> "TermConfig":
        if self.sum is not None and self.nahm is not None:
            raise ValueError("A term can have a `sum` or a `nahm`, not both!")
        return self


class QuadrupleConfig(BaseModel):
    """
    Parser class for the modular quadruple behind an identity, which is
    used to cross-check the printed value of C.
    """

    model_config = ConfigDict(extra="forbid")

    A: list[list[Text]] = Field(..., description="Matrix A.")
    B: list[Text] = Field(..., description="Vector B.")
    v: list[int] | None = Field(default=None, description="Coset shift.")
    L: list[list[int]] | None = Field(default=None, description="Lattice.")
    C: Text | None = Field(
        default=None,
        description="The printed value of C (if any).",
    )
    product: Text | None = Field(
        default=None,
        description=(
            "Product to compare with (default: the product of the first "
            "right-hand side term)."
        ),
    )
    scale: Text = Field(
        default="1",
        description=(
            "The identity is stated for q -> q^scale, i.e., the Nahm sum "
            "in q equals the product with q replaced by q^(1 / scale)."
        ),
    )


class EntryConfig(BaseModel):
    """
    Parser class for a single catalog entry.
    """

    model_config = ConfigDict(extra="forbid")

    id: str = Field(
        ...,
        description="Unique identifier, e.g., 'eq3-2' or 's-39'.",
    )
    status: Literal["proved", "conjecture", "parameterized"] = Field(
        default="proved",
        description=(
            "Status of the identity. Entries with parameters must have "
            "the status 'parameterized'."
        ),
    )
    anchor: str = Field(
        default="",
        description="Short quote that locates the identity in the source.",
    )
    lhs: list[TermConfig] = Field(
        ...,
        description="Terms on the left-hand side.",
    )
    rhs: list[TermConfig] = Field(
        ...,
        description="Terms on the right-hand side (may be empty for 0).",
    )
    params: list[str] = Field(
        default=[],
        description="Names of the parameters (used as `$name`).",
    )
    samples: list[dict[str, Text]] = Field(
        default=[],
        description="Parameter values at which the identity is verified.",
    )
    quadruple: QuadrupleConfig | None = Field(
        default=None,
        description="Modular quadruple for the prefactor cross-check.",
    )

    @model_validator(mode="after")
    def check_parameters(self) -> "EntryConfig":
        if self.params and self.status != "parameterized":
            raise ValueError(
                f"Entry '{self.id}' has parameters, so its status must be "
                "'parameterized'!"
            )
        if self.status == "parameterized":
            if not self.params or not self.samples:
                raise ValueError(
                    f"Parameterized entry '{self.id}' needs `params` and "
                    "`samples`!"
                )
            for sample in self.samples:
                if set(sample) != set(self.params):
                    raise ValueError(
                        f"Sample {sample} of entry '{self.id}' does not "
                        f"match the parameters {self.params}!"
                    )
        return self
