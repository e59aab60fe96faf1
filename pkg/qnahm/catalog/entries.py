"""
Catalog entries: identities between weighted sums of terms, where each
term is a product (optionally times a general sum or a partial Nahm
sum), and methods to load them from a catalog file.
"""

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from string import Template
from typing import Any, Sequence

from pydantic import ValidationError

from qnahm.catalog.config import (
    EntryConfig,
    NahmConfig,
    QuadrupleConfig,
    SumConfig,
    TermConfig,
)
from qnahm.catalog.parsing import (
    ParseError,
    parse_monomial,
    parse_poch_terms,
    parse_product,
    parse_quadratic,
    parse_rational,
)
from qnahm.nahm.evaluation import eval_sumspec
from qnahm.nahm.specs import (
    LatticeCoset,
    NahmSpec,
    QuadraticForm,
    SumSpec,
    zero_form,
)
from qnahm.qfactors.products import ProductSpec, eval_product
from qnahm.series.puiseux import PuiseuxSeries, linear_combine, zero_series
from qnahm.series.rationals import RatLike, as_rat
from qnahm.utils.config import load_yaml
from qnahm.utils.paths import get_default_catalog_path


@dataclass(frozen=True)
class Term:
    """
    The term weight * product * sum (the sum is optional).
    """

    weight: Fraction
    product: ProductSpec
    sum: SumSpec | None = None

    def evaluate(self, order: RatLike) -> PuiseuxSeries:
        """
        Expand the term to the given order.
        """

        order = as_rat(order)
        if self.weight == 0 or self.product.constant == 0:
            return zero_series(order)
        if self.sum is None:
            return eval_product(self.product, order).scale(self.weight)

        # All product factors start at 1, so the product starts at q^mu
        inner = eval_sumspec(self.sum, order - self.product.monomial_exp)
        if inner.is_zero():
            return zero_series(order)
        outer = eval_product(
            self.product, order - Fraction(inner.min_exponent)
        )
        return (inner * outer).truncate(order).scale(self.weight)


def evaluate_side(terms: Sequence[Term], order: RatLike) -> PuiseuxSeries:
    """
    Sum of all terms of one side (an empty side is zero).
    """

    order = as_rat(order)
    if not terms:
        return zero_series(order)
    return linear_combine((1, term.evaluate(order)) for term in terms)


@dataclass(frozen=True)
class Quadruple:
    """
    A partial Nahm sum with C = 0 together with the product it equals
    (up to a power of q, and with q -> q^(1 / scale) in the product).
    """

    spec: NahmSpec
    product: ProductSpec
    printed_C: Fraction | None = None
    scale: Fraction = Fraction(1)


@dataclass(frozen=True)
class Instance:
    """
    A concrete identity: an entry without parameters, or a parameterized
    entry at one of its samples.
    """

    label: str
    lhs: tuple[Term, ...]
    rhs: tuple[Term, ...]
    quadruple: Quadruple | None = None

    def evaluate(
        self,
        order: RatLike,
    ) -> tuple[PuiseuxSeries, PuiseuxSeries]:
        return evaluate_side(self.lhs, order), evaluate_side(self.rhs, order)


@dataclass(frozen=True)
class IdentityEntry:
    """
    A catalog record.
    """

    id: str
    status: str
    anchor: str
    params: tuple[str, ...]
    instances: tuple[Instance, ...]

    @property
    def is_parameterized(self) -> bool:
        return bool(self.params)


# -----------------------------------------------------------------------------
# Building entries from their configuration
# -----------------------------------------------------------------------------


def build_nahm(config: NahmConfig) -> NahmSpec:
    return NahmSpec.create(
        A=[[parse_rational(x) for x in row] for row in config.A],
        B=[parse_rational(x) for x in config.B],
        C=parse_rational(config.C),
        v=config.v,
        L=config.L,
    )


def build_sum(config: SumConfig) -> SumSpec:
    """
    Build a `SumSpec` from its configuration.
    """

    indices = config.indices
    r = len(indices)
    exponent = parse_quadratic(config.exponent, indices)
    sign = (
        parse_quadratic(config.sign, indices)
        if config.sign is not None
        else None
    )

    # Factors u^n_k with u = +/- q^e go into the exponent and the sign
    shifts = [Fraction(0)] * r
    flips = [0] * r
    for name, text in config.powers.items():
        if name not in indices:
            raise ParseError(f"Unknown index '{name}' in `powers`!")
        u = parse_monomial(text)
        shifts[indices.index(name)] += u.exp
        flips[indices.index(name)] += 1 if u.sign == -1 else 0
    exponent = QuadraticForm(
        exponent.A,
        tuple(b + s for b, s in zip(exponent.B, shifts)),
        exponent.C,
    )
    if any(flips):
        base = sign if sign is not None else zero_form(r)
        sign = QuadraticForm(
            base.A, tuple(b + f for b, f in zip(base.B, flips)), base.C
        )

    coset = None
    if config.coset is not None:
        coset = LatticeCoset(
            basis=tuple(tuple(row) for row in config.coset.L),
            shift=tuple(config.coset.v),
        )

    return SumSpec(
        exponent=exponent,
        sign=sign,
        numerator=tuple(
            term
            for text in config.numerator
            for term in parse_poch_terms(text, indices)
        ),
        denominator=tuple(
            term
            for text in config.denominator
            for term in parse_poch_terms(text, indices)
        ),
        coset=coset,
        bilateral=config.bilateral,
    )


def build_term(config: TermConfig) -> Term:
    product = (
        parse_product(config.product)
        if config.product is not None
        else ProductSpec()
    )
    sumspec = None
    if config.nahm is not None:
        sumspec = build_nahm(config.nahm).to_sumspec()
    elif config.sum is not None:
        sumspec = build_sum(config.sum)
    return Term(parse_rational(config.weight), product, sumspec)


def build_quadruple(
    config: QuadrupleConfig,
    rhs: Sequence[Term],
) -> Quadruple:
    """
    Build the quadruple of an entry. Unless a product is given, the
    product is the first right-hand side term.
    """

    spec = NahmSpec.create(
        A=[[parse_rational(x) for x in row] for row in config.A],
        B=[parse_rational(x) for x in config.B],
        C=0,
        v=config.v,
        L=config.L,
    )
    if config.product is not None:
        product = parse_product(config.product)
    elif rhs and rhs[0].sum is None:
        product = rhs[0].product.scaled(rhs[0].weight)
    else:
        raise ParseError("Quadruple needs a product!")

    return Quadruple(
        spec=spec,
        product=product,
        printed_C=parse_rational(config.C) if config.C is not None else None,
        scale=parse_rational(config.scale),
    )


def _format_value(text: str) -> str:
    """
    Rational parameter values are wrapped in parentheses; monomials are
    inserted verbatim.
    """

    try:
        parse_rational(text)
    except ParseError:
        return text
    return f"({text})"


def _substitute(value: Any, values: dict[str, str]) -> Any:
    if isinstance(value, str):
        return Template(value).substitute(values)
    if isinstance(value, list):
        return [_substitute(x, values) for x in value]
    if isinstance(value, dict):
        return {k: _substitute(x, values) for k, x in value.items()}
    return value


def build_instance(
    config: EntryConfig,
    sample: dict[str, str] | None = None,
) -> Instance:
    """
    Build the concrete identity of an entry at a parameter sample.
    """

    label = config.id
    lhs_configs, rhs_configs = config.lhs, config.rhs
    quadruple_config = config.quadruple

    if sample is not None:
        label += "@" + ",".join(f"{k}={sample[k]}" for k in config.params)
        values = {k: _format_value(v) for k, v in sample.items()}
        raw = _substitute(
            config.model_dump(include={"lhs", "rhs", "quadruple"}),
            values,
        )
        lhs_configs = [TermConfig(**term) for term in raw["lhs"]]
        rhs_configs = [TermConfig(**term) for term in raw["rhs"]]
        if raw["quadruple"] is not None:
            quadruple_config = QuadrupleConfig(**raw["quadruple"])

    lhs = tuple(build_term(term) for term in lhs_configs)
    rhs = tuple(build_term(term) for term in rhs_configs)
    quadruple = (
        build_quadruple(quadruple_config, rhs)
        if quadruple_config is not None
        else None
    )
    return Instance(label, lhs, rhs, quadruple)


def parse_entry(record: Any, position: int = 0) -> IdentityEntry:
    """
    Validate and build a single catalog record.

    Raises:
        ParseError: If the record violates the schema or contains an
            invalid expression. The message names the entry.
    """

    name = f"#{position}"
    if isinstance(record, dict) and "id" in record:
        name = str(record["id"])

    try:
        config = EntryConfig.model_validate(record)
        samples: list[dict[str, str] | None] = [None]
        if config.params:
            samples = list(config.samples)
        instances = tuple(build_instance(config, s) for s in samples)
    except (KeyError, ValidationError, ValueError, ZeroDivisionError) as e:
        raise ParseError(f"Entry '{name}': {e}") from e

    return IdentityEntry(
        id=config.id,
        status=config.status,
        anchor=config.anchor,
        params=tuple(config.params),
        instances=instances,
    )


def load_catalog(file_path: Path | None = None) -> list[IdentityEntry]:
    """
    Load all entries of a catalog file.

    Args:
        file_path: Path to a YAML or JSON catalog (default: see
            `get_default_catalog_path()`).

    Returns:
        The entries in file order (an empty file gives no entries).

    Raises:
        ParseError: If an entry is invalid or an id occurs twice.
    """

    file_path = get_default_catalog_path() if file_path is None else file_path
    data = load_yaml(file_path)
    if data is None:
        return []
    if not isinstance(data, list):
        raise ParseError(f"{file_path}: a catalog must be a list of entries!")

    entries = []
    seen: set[str] = set()
    for position, record in enumerate(data):
        entry = parse_entry(record, position)
        if entry.id in seen:
            raise ParseError(f"Duplicate entry id '{entry.id}'!")
        seen.add(entry.id)
        entries.append(entry)
    return entries


def find_entry(entries: Sequence[IdentityEntry], id: str) -> IdentityEntry:
    """
    Look up an entry by its id.

    Raises:
        KeyError: If there is no such entry.
    """

    for entry in entries:
        if entry.id == id:
            return entry
    raise KeyError(f"No catalog entry with id '{id}'!")
