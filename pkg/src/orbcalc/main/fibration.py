from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

from .divisor import OrbifoldDivisor, Variety, divisor_divides, divisor_leq
from .errors import NoNonExceptionalComponent, TowerInconsistency, VarietyMismatch
from .morphism import PullbackTable, minimal_multiplicity
from .multiplicity import ExtMult, ExtRational, ext_gcd, ext_lcm, scale
from .shared import Category


class ComponentEntry(BaseModel):
    """A prime E_j of the total space in f*(D) with coefficient m_j.

    Exceptional components have an image of codimension ≥ 2 and do not count towards the
    base orbifold.
    """

    model_config = ConfigDict(frozen=True)

    component: str
    coefficient: PositiveInt
    exceptional: bool = False


class FibrationModel(BaseModel):
    """f: Y → X modeled by f*(D) = Σ m_j·E_j + R over the base primes D in play."""

    model_config = ConfigDict(frozen=True)

    total: Variety
    base: Variety
    fibers: dict[str, tuple[ComponentEntry, ...]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def validate_fibers(self) -> Self:
        for d, entries in self.fibers.items():
            if not self.base.has_prime(d):
                raise ValueError(f"'{d}' is not a prime of the base '{self.base.name}'.")

            if not entries:
                raise ValueError(f"Fiber over '{d}' has no components.")

            components = [entry.component for entry in entries]

            if len(set(components)) != len(components):
                raise ValueError(f"Fiber over '{d}' lists a component twice.")

            for entry in entries:
                if not self.total.has_prime(entry.component):
                    raise ValueError(
                        f"'{entry.component}' is not a prime of the total space "
                        f"'{self.total.name}'."
                    )

                if entry.exceptional:
                    continue

                # A component dominating a prime of the base maps onto it only.
                if any(
                    entry.component in components_of(self, other)
                    for other in self.fibers
                    if other != d
                ):
                    raise ValueError(
                        f"Non-exceptional '{entry.component}' appears over '{d}' and over "
                        "another prime."
                    )

        return self

    def entries(self, d: str) -> tuple[ComponentEntry, ...]:
        return self.fibers.get(d, ())


def components_of(m: FibrationModel, d: str) -> set[str]:
    return {entry.component for entry in m.entries(d)}


class ComposedBase(BaseModel):
    model_config = ConfigDict(frozen=True)

    direct: OrbifoldDivisor
    staged: OrbifoldDivisor


class TowerModel(BaseModel):
    """Fibrations g: Z → Y and f: Y → X together with their composite fg = f∘g."""

    model_config = ConfigDict(frozen=True)

    g: FibrationModel
    f: FibrationModel
    fg: FibrationModel

    def problems(self) -> list[str]:  # noqa: C901, PLR0912
        problems = []

        if self.g.base != self.f.total:
            problems.append(
                f"g maps to '{self.g.base.name}' but f starts from '{self.f.total.name}'."
            )

        if self.f.base != self.fg.base:
            problems.append("f and fg have different bases.")

        if self.g.total != self.fg.total:
            problems.append("g and fg have different total spaces.")

        if problems:
            return problems

        for d in sorted(set(self.fg.fibers) - set(self.f.fibers)):
            problems.append(f"fg has a fiber over '{d}' but f does not.")

        for d, f_entries in self.f.fibers.items():
            expected: dict[str, int] = defaultdict(int)
            lies_over: dict[str, list[tuple[ComponentEntry, ComponentEntry]]] = defaultdict(list)

            for f_entry in f_entries:
                g_entries = self.g.entries(f_entry.component)

                if not g_entries:
                    problems.append(f"'{f_entry.component}' over '{d}' has no fiber in g.")
                    continue

                for g_entry in g_entries:
                    expected[g_entry.component] += g_entry.coefficient * f_entry.coefficient
                    lies_over[g_entry.component].append((f_entry, g_entry))

            if d not in self.fg.fibers:
                problems.append(f"fg has no fiber over '{d}'.")
                continue

            actual = {entry.component: entry for entry in self.fg.entries(d)}

            for component in sorted(set(expected) - set(actual)):
                problems.append(f"fg is missing '{component}' over '{d}'.")

            for component in sorted(set(actual) - set(expected)):
                problems.append(f"fg lists '{component}' over '{d}', which g∘f does not give.")

            for component in sorted(set(actual) & set(expected)):
                entry = actual[component]
                pairs = lies_over[component]

                if entry.coefficient != expected[component]:
                    problems.append(
                        f"Coefficient of '{component}' over '{d}' is {entry.coefficient}, "
                        f"the composition gives {expected[component]}."
                    )

                if entry.exceptional:
                    if not any(
                        g_entry.exceptional or f_entry.exceptional for f_entry, g_entry in pairs
                    ):
                        problems.append(
                            f"fg-exceptional '{component}' over '{d}' is neither g-exceptional "
                            "nor over an f-exceptional component."
                        )
                elif all(f_entry.exceptional for f_entry, _ in pairs):
                    problems.append(
                        f"'{component}' dominates '{d}' but lies only over f-exceptional "
                        "components."
                    )

        return problems


# Operations ---------------------------------------------------------------------------------------


def fibration_table(m: FibrationModel, include_exceptional: bool = True) -> PullbackTable:
    """The pullback table with t_{E_j, D} = m_j."""

    return PullbackTable(
        source=m.total,
        target=m.base,
        coeff={
            (entry.component, d): Fraction(entry.coefficient)
            for d, entries in m.fibers.items()
            for entry in entries
            if include_exceptional or not entry.exceptional
        },
    )


def base_orbifold(m: FibrationModel, delta_y: OrbifoldDivisor, cat: Category) -> OrbifoldDivisor:
    """The base orbifold: over each D, the inf (Q, Z) or gcd (Div) of m_j·m_Δ(E_j).

    Exceptional components are skipped. Base primes without fiber data keep multiplicity 1.
    """

    if delta_y.variety != m.total:
        raise VarietyMismatch(m.total.name, delta_y.variety.name)

    if cat.requires_integral:
        delta_y.require_integral()

    mult: dict[str, ExtRational] = {}

    for d, entries in m.fibers.items():
        values = [
            scale(Fraction(entry.coefficient), delta_y.m(entry.component))
            for entry in entries
            if not entry.exceptional
        ]

        if not values:
            raise NoNonExceptionalComponent(f"Every component over '{d}' is exceptional.")

        mult[d] = ext_gcd(values) if cat is Category.DIV else min(values)

    return OrbifoldDivisor.of(m.base, mult)


def saturate_exceptional(
    m: FibrationModel, delta_y: OrbifoldDivisor, cat: Category
) -> OrbifoldDivisor:
    """Raises the exceptional components of Δ_Y until f is a morphism onto its base orbifold.

    The base orbifold is unchanged, and f: (Y|result) → (X|base) passes the morphism check
    for the full table, exceptional entries included.
    """

    base = base_orbifold(m, delta_y, cat)

    constraints: dict[str, list[tuple[ExtMult, Fraction]]] = defaultdict(list)

    for d, entries in m.fibers.items():
        for entry in entries:
            if entry.exceptional:
                constraints[entry.component].append((base.m(d), Fraction(entry.coefficient)))

    mult = dict(delta_y.mult)

    for component, pairs in constraints.items():
        required = minimal_multiplicity(pairs, cat)
        current = delta_y.m(component)

        if cat is Category.DIV:
            mult[component] = ext_lcm([current, required])
        else:
            mult[component] = max(current, required)

    return OrbifoldDivisor.of(m.total, mult)


def compose_base(t: TowerModel, delta_z: OrbifoldDivisor, cat: Category) -> ComposedBase:
    """The base of f∘g computed directly and in two stages through Y."""

    problems = t.problems()

    if problems:
        raise TowerInconsistency(problems)

    direct = base_orbifold(t.fg, delta_z, cat)
    staged = base_orbifold(t.f, base_orbifold(t.g, delta_z, cat), cat)

    return ComposedBase(direct=direct, staged=staged)


def check_comporb(t: TowerModel, delta_z: OrbifoldDivisor, cat: Category) -> bool:
    composed = compose_base(t, delta_z, cat)

    if cat is Category.DIV:
        return divisor_divides(composed.direct, composed.staged)

    return divisor_leq(composed.direct, composed.staged)
