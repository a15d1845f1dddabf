from __future__ import annotations

import math
from collections.abc import Iterator, Mapping, Sequence
from fractions import Fraction
from typing import Any, Self

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    ValidationInfo,
    field_validator,
    model_validator,
)

from .errors import (
    DimensionTooLarge,
    InfiniteMultiplicity,
    MissingDegreeData,
    NonIntegralMultiplicity,
    NotALineModel,
    OutOfRange,
    UnknownEntity,
    VarietyMismatch,
)
from .multiplicity import ONE, ExtMult, Rational, coefficient, mult_divides
from .shared import SYLVESTER_DIMENSION_MAX


# The plane with lines as primes: deg K = -3 and every prime has degree 1.
PLANE_CANONICAL_DEGREE = Fraction(-3)


class DegreeData(BaseModel):
    """Degree pairing against a fixed polarization: deg K_X and deg D for each prime."""

    model_config = ConfigDict(frozen=True)

    canonical: Rational
    primes: dict[str, Rational]

    @field_validator("primes")
    @classmethod
    def validate_positive(cls, value: dict[str, Fraction]) -> dict[str, Fraction]:
        for label, degree in value.items():
            if degree <= 0:
                raise ValueError(f"Degree of '{label}' must be positive, got {degree}.")

        return value


class Variety(BaseModel):
    """An abstract variety: a name, a dimension and the prime divisors in play."""

    model_config = ConfigDict(frozen=True)

    name: str
    dim: NonNegativeInt
    primes: tuple[str, ...]
    degree: DegreeData | None = None

    @model_validator(mode="after")
    def validate_primes(self) -> Self:
        if len(set(self.primes)) != len(self.primes):
            duplicates = sorted({p for p in self.primes if self.primes.count(p) > 1})
            raise ValueError(f"Duplicate prime labels: {', '.join(duplicates)}.")

        if self.degree is not None and set(self.degree.primes) != set(self.primes):
            missing = sorted(set(self.primes) - set(self.degree.primes))
            extra = sorted(set(self.degree.primes) - set(self.primes))
            raise ValueError(
                f"Degree data must cover exactly the primes (missing: {missing}, extra: {extra})."
            )

        return self

    def has_prime(self, label: str) -> bool:
        return label in self.primes

    def require_degree(self) -> DegreeData:
        if self.degree is None:
            raise MissingDegreeData(self.name)

        return self.degree


class OrbifoldDivisor(BaseModel):
    """Δ = Σ (1 - 1/m(D))·D. Primes not in `mult` have multiplicity 1."""

    model_config = ConfigDict(frozen=True)

    variety: Variety
    mult: dict[str, ExtMult] = Field(default_factory=dict)

    @field_validator("mult")
    @classmethod
    def normalize_mult(
        cls, value: dict[str, ExtMult], info: ValidationInfo
    ) -> dict[str, ExtMult]:
        variety: Variety | None = info.data.get("variety")

        if variety is None:
            return value

        unknown = sorted(label for label in value if not variety.has_prime(label))

        if unknown:
            raise ValueError(f"Not primes of '{variety.name}': {', '.join(unknown)}.")

        # Canonical form: trivial entries dropped, keys in the variety's order.
        return {
            label: value[label]
            for label in variety.primes
            if label in value and value[label] != ONE
        }

    @classmethod
    def of(cls, variety: Variety, mult: Mapping[str, Any] | None = None) -> Self:
        return cls(variety=variety, mult=dict(mult or {}))

    @classmethod
    def zero(cls, variety: Variety) -> Self:
        return cls(variety=variety)

    def m(self, label: str) -> ExtMult:
        if not self.variety.has_prime(label):
            raise UnknownEntity(f"prime of '{self.variety.name}'", label)

        return self.mult.get(label, ONE)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self.mult)

    @property
    def is_integral(self) -> bool:
        return all(m.is_integral for m in self.mult.values())

    @property
    def is_finite(self) -> bool:
        return not any(m.is_infinite for m in self.mult.values())

    def items(self) -> Iterator[tuple[str, ExtMult]]:
        yield from self.mult.items()

    def require_integral(self) -> None:
        for label, m in self.mult.items():
            if not m.is_integral:
                raise NonIntegralMultiplicity(
                    f"'{label}' has multiplicity {m}; this category needs an entière divisor."
                )


# Lattice ------------------------------------------------------------------------------------------


def require_same_variety(a: OrbifoldDivisor, b: OrbifoldDivisor) -> None:
    if a.variety != b.variety:
        raise VarietyMismatch(a.variety.name, b.variety.name)


def divisor_leq(a: OrbifoldDivisor, b: OrbifoldDivisor) -> bool:
    require_same_variety(a, b)

    return all(a.m(label) <= b.m(label) for label in a.support | b.support)


def divisor_divides(a: OrbifoldDivisor, b: OrbifoldDivisor) -> bool:
    require_same_variety(a, b)

    a.require_integral()
    b.require_integral()

    return all(mult_divides(a.m(label), b.m(label)) for label in a.support | b.support)


def divisor_sup(a: OrbifoldDivisor, b: OrbifoldDivisor) -> OrbifoldDivisor:
    require_same_variety(a, b)

    return OrbifoldDivisor.of(
        a.variety,
        {label: max(a.m(label), b.m(label)) for label in a.support | b.support},
    )


def divisor_inf(a: OrbifoldDivisor, b: OrbifoldDivisor) -> OrbifoldDivisor:
    require_same_variety(a, b)

    return OrbifoldDivisor.of(
        a.variety,
        {label: min(a.m(label), b.m(label)) for label in a.support & b.support},
    )


# Degrees ------------------------------------------------------------------------------------------


def canonical_degree(delta: OrbifoldDivisor) -> Fraction:
    """deg(K_X + Δ) = deg K_X + Σ (1 - 1/m(D))·deg D."""

    degree = delta.variety.require_degree()

    return degree.canonical + sum(
        (coefficient(m) * degree.primes[label] for label, m in delta.items()),
        start=Fraction(0),
    )


def is_fano(delta: OrbifoldDivisor) -> bool:
    return canonical_degree(delta) < 0


def plane_rational_expected_dim(delta: OrbifoldDivisor, d: int) -> Fraction:
    """Expected dimension of degree-d rational plane curves with orbifold contacts.

    Rational plane curves of degree d depend on 3d - 1 parameters; each line D of
    multiplicity m imposes d·(1 - 1/m) conditions.
    """

    variety = delta.variety
    degree = variety.require_degree()

    if (
        variety.dim != 2
        or degree.canonical != PLANE_CANONICAL_DEGREE
        or any(value != 1 for value in degree.primes.values())
    ):
        raise NotALineModel(f"'{variety.name}' is not the plane with lines as primes.")

    if isinstance(d, bool) or d < 1:
        raise OutOfRange(f"The curve degree must be a positive integer, got {d}.")

    for label, m in delta.items():
        if m.is_infinite:
            raise InfiniteMultiplicity(f"Line '{label}' has infinite multiplicity.")

    conditions = sum((coefficient(m) for _, m in delta.items()), start=Fraction(0))

    return (3 * d - 1) - d * conditions


# Models -------------------------------------------------------------------------------------------


def projective_space(
    dim: int,
    hyperplanes: Sequence[str],
    name: str | None = None,
) -> Variety:
    """ℙⁿ with labeled hyperplanes as its primes: deg K = -(n+1), each hyperplane degree 1."""

    return Variety(
        name=name or f"P{dim}",
        dim=dim,
        primes=tuple(hyperplanes),
        degree=DegreeData(
            canonical=Fraction(-(dim + 1)),
            primes={label: Fraction(1) for label in hyperplanes},
        ),
    )


def sylvester_multiplicities(n: int) -> tuple[int, ...]:
    """Multiplicities (a_0, ..., a_n, a_{n+1} - 2) on n + 2 hyperplanes of ℙⁿ.

    a_0 = 2 and a_{k+1} = a_0···a_k + 1 (Sylvester's sequence). The resulting orbifold
    is Fano of canonical degree -1/(a_0···a_n·(a_{n+1} - 2)).
    """

    if n < 1:
        raise OutOfRange(f"The dimension must be at least 1, got {n}.")

    if n > SYLVESTER_DIMENSION_MAX:
        raise DimensionTooLarge(f"Dimension {n} exceeds the limit {SYLVESTER_DIMENSION_MAX}.")

    terms = [2]

    while len(terms) <= n:
        terms.append(math.prod(terms) + 1)

    return (*terms, math.prod(terms) - 1)


def sylvester_degree(n: int) -> Fraction:
    product = math.prod(sylvester_multiplicities(n)[:-1])

    return Fraction(-1, product * (product - 1))


def sylvester_divisor(n: int) -> OrbifoldDivisor:
    multiplicities = sylvester_multiplicities(n)
    hyperplanes = [f"H{index}" for index in range(len(multiplicities))]

    return OrbifoldDivisor.of(
        projective_space(n, hyperplanes),
        dict(zip(hyperplanes, multiplicities, strict=True)),
    )
