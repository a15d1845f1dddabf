from __future__ import annotations

import math
from collections import defaultdict
from collections.abc import Iterable, Iterator
from fractions import Fraction
from typing import Self

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveInt,
    field_validator,
    model_validator,
)

from .curve import OrbifoldCurve, curve_canonical_degree
from .divisor import OrbifoldDivisor, Variety
from .errors import (
    FiberSumMismatch,
    MissingMultiplicity,
    NonIntegralCoefficient,
    NonIntegralMultiplicity,
    UnknownEntity,
    VarietyMismatch,
)
from .multiplicity import (
    INFINITY,
    ONE,
    ExtMult,
    ExtRational,
    Rational,
    ceil,
    clamp,
    ext_lcm,
    mult_divides,
    ratio,
    scale,
)
from .shared import Category


# Types --------------------------------------------------------------------------------------------


class PullbackTable(BaseModel):
    """f: Y → X modeled by f*(D) = Σ t_{E,D}·E + (primes not in play).

    `coeff` maps (E, D) to t_{E,D} > 0. Absent pairs have t = 0.
    """

    model_config = ConfigDict(frozen=True)

    source: Variety
    target: Variety
    coeff: dict[tuple[str, str], Rational] = Field(default_factory=dict)

    @model_validator(mode="after")
    def validate_coeff(self) -> Self:
        for (e, d), t in self.coeff.items():
            if not self.source.has_prime(e):
                raise ValueError(f"'{e}' is not a prime of the source '{self.source.name}'.")

            if not self.target.has_prime(d):
                raise ValueError(f"'{d}' is not a prime of the target '{self.target.name}'.")

            if t <= 0:
                raise ValueError(f"Coefficient t[{e}, {d}] must be positive, got {t}.")

        return self

    def t(self, e: str, d: str) -> Fraction:
        return self.coeff.get((e, d), Fraction(0))

    def pairs(self) -> Iterator[tuple[str, str, Fraction]]:
        """Every (E, D, t) with t > 0, in source then target order."""

        for e in self.source.primes:
            for d in self.target.primes:
                t = self.coeff.get((e, d))

                if t is not None:
                    yield e, d, t

    def over(self, e: str) -> list[tuple[str, Fraction]]:
        return [(d, t) for e_, d, t in self.pairs() if e_ == e]

    @property
    def is_integral(self) -> bool:
        return all(t.denominator == 1 for t in self.coeff.values())


class CurveContactData(BaseModel):
    """A curve meeting the primes of X: contact point → {D: order}."""

    model_config = ConfigDict(frozen=True)

    genus: NonNegativeInt
    contacts: dict[str, dict[str, PositiveInt]] = Field(default_factory=dict)


class CoveringRamification(BaseModel):
    """A degree-d covering of curves R' → R.

    `fibers` lists the ramification orders over each ramified target point. `m_source`
    holds the orbifold multiplicities of the points of a fiber, in fiber order.
    """

    model_config = ConfigDict(frozen=True)

    degree: PositiveInt
    source_genus: NonNegativeInt
    target_genus: NonNegativeInt
    fibers: dict[str, tuple[PositiveInt, ...]] = Field(default_factory=dict)
    m_source: dict[str, tuple[ExtMult, ...]] | None = None
    m_target: dict[str, ExtMult] | None = None

    @field_validator("fibers")
    @classmethod
    def validate_fibers(cls, value: dict[str, tuple[int, ...]]) -> dict[str, tuple[int, ...]]:
        for point, orders in value.items():
            if not orders:
                raise ValueError(f"Fiber over '{point}' is empty.")

        return value

    def fiber(self, b: str) -> tuple[int, ...]:
        """Ramification orders over b. Unlisted points are unramified."""

        return self.fibers.get(b, (1,) * self.degree)

    def source_mults(self, b: str) -> tuple[ExtMult, ...]:
        fiber = self.fiber(b)
        mults = (self.m_source or {}).get(b)

        if mults is None:
            return (ONE,) * len(fiber)

        if len(mults) != len(fiber):
            raise MissingMultiplicity(
                f"Fiber over '{b}' has {len(fiber)} points but {len(mults)} multiplicities."
            )

        return mults

    def target_mult(self, b: str) -> ExtMult:
        return (self.m_target or {}).get(b, ONE)

    @property
    def points(self) -> list[str]:
        return sorted(set(self.fibers) | set(self.m_source or {}) | set(self.m_target or {}))


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    e: str
    d: str
    t: Rational
    source: ExtRational
    target: ExtMult


class MorphismReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    ok: bool
    violations: list[Violation] = Field(default_factory=list)


class RiemannHurwitzReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    lhs: Rational
    identity_rhs: Rational
    bound_min: Rational
    bound_gcd: Rational
    identity_holds: bool


# Tables -------------------------------------------------------------------------------------------


def identity_table(variety: Variety) -> PullbackTable:
    return PullbackTable(
        source=variety,
        target=variety,
        coeff={(label, label): Fraction(1) for label in variety.primes},
    )


def table_from_entries(
    source: Variety,
    target: Variety,
    entries: Iterable[tuple[str, str, Fraction]],
) -> PullbackTable:
    coeff: dict[tuple[str, str], Fraction] = {}

    for e, d, t in entries:
        if (e, d) in coeff:
            raise ValueError(f"Duplicate coefficient for ({e}, {d}).")

        coeff[e, d] = t

    return PullbackTable(source=source, target=target, coeff=coeff)


def compose_tables(g: PullbackTable, f: PullbackTable) -> PullbackTable:
    """Table of f∘g: Z → X from g: Z → Y and f: Y → X, as (f∘g)* = g*∘f*."""

    if g.target != f.source:
        raise VarietyMismatch(f.source.name, g.target.name)

    coeff: dict[tuple[str, str], Fraction] = defaultdict(Fraction)

    for z, y, s in g.pairs():
        for x, t in f.over(y):
            coeff[z, x] += s * t

    return PullbackTable(source=g.source, target=f.target, coeff=dict(coeff))


# Categories ---------------------------------------------------------------------------------------


def _integral_coefficient(t: Fraction) -> int:
    if t.denominator != 1:
        raise NonIntegralCoefficient(f"The div category needs integral coefficients, got {t}.")

    return t.numerator


def _div_quotient(m: ExtMult, t: Fraction) -> ExtMult:
    """m / gcd(m, t), the least k with m | t·k."""

    t_int = _integral_coefficient(t)

    if m.is_infinite:
        return INFINITY

    m_int = int(m.finite)

    return ExtMult(m_int // math.gcd(m_int, t_int))


def minimal_multiplicity(constraints: list[tuple[ExtMult, Fraction]], cat: Category) -> ExtMult:
    """Least multiplicity k with t·k ≥ m (Q, Z) or m | t·k (Div) for each (m, t).

    Q: max(1, sup m/t). Z: max(1, sup ⌈m/t⌉). Div: lcm of m/gcd(m, t).
    """

    if not constraints:
        return ONE

    match cat:
        case Category.Q:
            return clamp(max(ratio(m, t) for m, t in constraints))
        case Category.Z:
            return clamp(max(ceil(ratio(m, t)) for m, t in constraints))
        case Category.DIV:
            return ext_lcm(_div_quotient(m, t) for m, t in constraints)
        case _:
            raise ValueError(f"Unsupported category: {cat}")


def _require_category(cat: Category, *divisors: OrbifoldDivisor) -> None:
    if cat.requires_integral:
        for divisor in divisors:
            divisor.require_integral()


# Morphisms ----------------------------------------------------------------------------------------


def check_morphism(
    delta_y: OrbifoldDivisor,
    delta_x: OrbifoldDivisor,
    f: PullbackTable,
    cat: Category,
) -> MorphismReport:
    """Whether f: (Y|Δ_Y) → (X|Δ_X) is an orbifold morphism of the category.

    Every (E, D) with t > 0 must satisfy t·m_Y(E) ≥ m_X(D) (Q, Z) or m_X(D) | t·m_Y(E) (Div).
    """

    if delta_y.variety != f.source:
        raise VarietyMismatch(f.source.name, delta_y.variety.name)

    if delta_x.variety != f.target:
        raise VarietyMismatch(f.target.name, delta_x.variety.name)

    _require_category(cat, delta_y, delta_x)

    violations = []

    for e, d, t in f.pairs():
        product = scale(t, delta_y.m(e))
        target = delta_x.m(d)

        if cat is Category.DIV:
            if not product.is_integral:
                raise NonIntegralMultiplicity(
                    f"t·m_Y({e}) = {product} is not integral; divisibility is undefined."
                )

            ok = mult_divides(target, product)
        else:
            ok = product >= target

        if not ok:
            violations.append(Violation(e=e, d=d, t=t, source=product, target=target))

    return MorphismReport(ok=not violations, violations=violations)


def minimal_lift(
    delta_x: OrbifoldDivisor,
    f: PullbackTable,
    cat: Category,
) -> OrbifoldDivisor:
    """The least Δ_Y making f: (Y|Δ_Y) → (X|Δ_X) a morphism of the category.

    Least for ≤ in Q and Z, for divisibility in Div.
    """

    if delta_x.variety != f.target:
        raise VarietyMismatch(f.target.name, delta_x.variety.name)

    _require_category(cat, delta_x)

    constraints: dict[str, list[tuple[ExtMult, Fraction]]] = defaultdict(list)

    for e, d, t in f.pairs():
        constraints[e].append((delta_x.m(d), t))

    return OrbifoldDivisor.of(
        f.source,
        {e: minimal_multiplicity(pairs, cat) for e, pairs in constraints.items()},
    )


# Curves -------------------------------------------------------------------------------------------


def restrict_to_curve(
    delta_x: OrbifoldDivisor,
    c: CurveContactData,
    cat: Category,
) -> OrbifoldCurve:
    """The orbifold structure induced on a curve by its contacts with the primes of Δ_X.

    Points whose multiplicity comes out as 1 are dropped.
    """

    _require_category(cat, delta_x)

    points = {}

    for point, contacts in c.contacts.items():
        for d in contacts:
            if not delta_x.variety.has_prime(d):
                raise UnknownEntity(f"prime of '{delta_x.variety.name}'", d)

        m = minimal_multiplicity(
            [(delta_x.m(d), Fraction(order)) for d, order in contacts.items()],
            cat,
        )

        if m != ONE:
            points[point] = m

    return OrbifoldCurve(genus=c.genus, points=points)


def is_delta_rational(delta_x: OrbifoldDivisor, c: CurveContactData, cat: Category) -> bool:
    curve = restrict_to_curve(delta_x, c, cat)

    return curve.genus == 0 and curve_canonical_degree(curve) < 0


# Coverings ----------------------------------------------------------------------------------------


def _require_fiber_sums(r: CoveringRamification) -> None:
    for b, orders in r.fibers.items():
        if sum(orders) != r.degree:
            raise FiberSumMismatch(
                f"Ramification orders over '{b}' sum to {sum(orders)}, expected {r.degree}."
            )


def check_etale_covering(r: CoveringRamification) -> bool:
    """e(b')·m'(b') = m(b) at every source point b' over every target point b."""

    _require_fiber_sums(r)

    if r.m_source is None or r.m_target is None:
        raise MissingMultiplicity("Both source and target multiplicities are required.")

    for b in r.points:
        target = r.target_mult(b)

        for e, m in zip(r.fiber(b), r.source_mults(b), strict=True):
            if scale(Fraction(e), m) != target:
                return False

    return True


def riemann_hurwitz(r: CoveringRamification) -> RiemannHurwitzReport:
    """Both sides of 2(g'-1)/d = 2(g-1) + Σ_b (1 - #fiber/d), and the two lower bounds.

    The bounds replace #fiber/d by 1/min(e) and 1/gcd(e). Since #fiber·min(e) ≤ d and
    gcd ≤ min, identity_rhs ≥ bound_min ≥ bound_gcd.
    """

    _require_fiber_sums(r)

    base = Fraction(2 * (r.target_genus - 1))

    identity_rhs = base
    bound_min = base
    bound_gcd = base

    for orders in r.fibers.values():
        identity_rhs += 1 - Fraction(len(orders), sum(orders))
        bound_min += 1 - Fraction(1, min(orders))
        bound_gcd += 1 - Fraction(1, math.gcd(*orders))

    lhs = Fraction(2 * (r.source_genus - 1), r.degree)

    return RiemannHurwitzReport(
        lhs=lhs,
        identity_rhs=identity_rhs,
        bound_min=bound_min,
        bound_gcd=bound_gcd,
        identity_holds=lhs == identity_rhs,
    )


def source_orbifold(r: CoveringRamification) -> OrbifoldCurve:
    """The source curve with its marked points, labeled '<b>#<i>' by fiber position."""

    points = {}

    for b in r.points:
        for index, m in enumerate(r.source_mults(b)):
            if m != ONE:
                points[f"{b}#{index}"] = m

    return OrbifoldCurve(genus=r.source_genus, points=points)


def target_orbifold(r: CoveringRamification) -> OrbifoldCurve:
    return OrbifoldCurve(
        genus=r.target_genus,
        points={b: m for b, m in (r.m_target or {}).items() if m != ONE},
    )
