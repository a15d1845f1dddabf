from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from orbcalc.main.divisor import OrbifoldDivisor, Variety, divisor_divides, divisor_leq
from orbcalc.main.errors import (
    NoNonExceptionalComponent,
    NonIntegralMultiplicity,
    TowerInconsistency,
    VarietyMismatch,
)
from orbcalc.main.fibration import (
    ComponentEntry,
    FibrationModel,
    TowerModel,
    base_orbifold,
    check_comporb,
    compose_base,
    fibration_table,
    saturate_exceptional,
)
from orbcalc.main.morphism import check_morphism
from orbcalc.main.multiplicity import INFINITY, ExtMult
from orbcalc.main.shared import Category
from orbcalc.main.workspace import Workspace

from .strategies import divisors, towers


CATEGORIES = list(Category)

X = Variety(name="X", dim=1, primes=("D", "D'"))
Y = Variety(name="Y", dim=2, primes=("A", "B", "C"))


def entry(component: str, coefficient: int, exceptional: bool = False) -> ComponentEntry:
    return ComponentEntry(component=component, coefficient=coefficient, exceptional=exceptional)


# Models -------------------------------------------------------------------------------------------


def test_fibration_validation() -> None:
    with pytest.raises(ValidationError, match="not a prime of the base"):
        FibrationModel(total=Y, base=X, fibers={"E": (entry("A", 1),)})

    with pytest.raises(ValidationError, match="not a prime of the total space"):
        FibrationModel(total=Y, base=X, fibers={"D": (entry("Q", 1),)})

    with pytest.raises(ValidationError, match="has no components"):
        FibrationModel(total=Y, base=X, fibers={"D": ()})

    with pytest.raises(ValidationError, match="lists a component twice"):
        FibrationModel(total=Y, base=X, fibers={"D": (entry("A", 1), entry("A", 2))})


def test_non_exceptional_component_has_one_image() -> None:
    with pytest.raises(ValidationError, match="Non-exceptional 'A'"):
        FibrationModel(
            total=Y,
            base=X,
            fibers={"D": (entry("A", 1),), "D'": (entry("A", 1), entry("B", 1))},
        )

    model = FibrationModel(
        total=Y,
        base=X,
        fibers={
            "D": (entry("A", 1), entry("C", 1, exceptional=True)),
            "D'": (entry("B", 1), entry("C", 2, exceptional=True)),
        },
    )

    assert model.entries("D'")[1].coefficient == 2
    assert model.entries("missing") == ()


def test_fibration_table() -> None:
    model = FibrationModel(
        total=Y,
        base=X,
        fibers={"D": (entry("A", 2), entry("C", 3, exceptional=True))},
    )

    assert fibration_table(model).coeff == {("A", "D"): 2, ("C", "D"): 3}
    assert fibration_table(model, include_exceptional=False).coeff == {("A", "D"): 2}


# Base orbifold ------------------------------------------------------------------------------------


def test_pencil_base(fibrations: Workspace) -> None:
    pencil = fibrations.fibration("pencil")
    delta = fibrations.divisor("pq")

    base_q = base_orbifold(pencil, delta, Category.Q)

    assert [base_q.m(point) for point in ("0", "1", "inf")] == [ExtMult(3)] * 3
    assert base_orbifold(pencil, delta, Category.Z) == base_q
    assert base_orbifold(pencil, delta, Category.DIV) == OrbifoldDivisor.zero(pencil.base)


def test_multiple_fiber() -> None:
    model = FibrationModel(total=Y, base=X, fibers={"D": (entry("A", 4),)})
    delta = OrbifoldDivisor.zero(Y)

    for cat in CATEGORIES:
        base = base_orbifold(model, delta, cat)

        assert base.m("D") == ExtMult(4)
        assert base.m("D'") == ExtMult(1)


def test_exceptional_components_do_not_count() -> None:
    model = FibrationModel(
        total=Y,
        base=X,
        fibers={"D": (entry("A", 2), entry("B", 1, exceptional=True))},
    )

    assert base_orbifold(model, OrbifoldDivisor.zero(Y), Category.Q).m("D") == ExtMult(2)


def test_infinite_components() -> None:
    model = FibrationModel(total=Y, base=X, fibers={"D": (entry("A", 1), entry("B", 2))})
    delta = OrbifoldDivisor.of(Y, {"A": "inf", "B": 3})

    assert base_orbifold(model, delta, Category.Q).m("D") == ExtMult(6)
    assert base_orbifold(model, delta, Category.DIV).m("D") == ExtMult(6)

    delta = OrbifoldDivisor.of(Y, {"A": "inf", "B": "inf"})

    assert base_orbifold(model, delta, Category.DIV).m("D") == INFINITY


def test_base_errors() -> None:
    model = FibrationModel(total=Y, base=X, fibers={"D": (entry("A", 1, exceptional=True),)})

    with pytest.raises(NoNonExceptionalComponent):
        base_orbifold(model, OrbifoldDivisor.zero(Y), Category.Q)

    with pytest.raises(VarietyMismatch):
        base_orbifold(model, OrbifoldDivisor.zero(X), Category.Q)

    model = FibrationModel(total=Y, base=X, fibers={"D": (entry("A", 1),)})

    with pytest.raises(NonIntegralMultiplicity):
        base_orbifold(model, OrbifoldDivisor.of(Y, {"A": "3/2"}), Category.Z)


def test_saturate_exceptional() -> None:
    model = FibrationModel(
        total=Y,
        base=X,
        fibers={
            "D": (entry("A", 1), entry("C", 1, exceptional=True)),
            "D'": (entry("B", 1), entry("C", 2, exceptional=True)),
        },
    )
    delta = OrbifoldDivisor.of(Y, {"A": 4, "B": 6})

    assert saturate_exceptional(model, delta, Category.Q).m("C") == ExtMult(4)
    assert saturate_exceptional(model, delta, Category.DIV).m("C") == ExtMult(12)


# Towers -------------------------------------------------------------------------------------------


def test_tower_problems(fibrations: Workspace) -> None:
    assert fibrations.tower("tower").problems() == []

    problems = fibrations.tower("broken").problems()

    assert "fg is missing 'z2' over 'x'." in problems
    assert any("Coefficient of 'z3'" in problem for problem in problems)


def test_tower_mismatched_spaces(fibrations: Workspace) -> None:
    tower = fibrations.tower("tower")
    problems = TowerModel(g=tower.f, f=tower.f, fg=tower.fg).problems()

    assert problems
    assert problems[0].startswith("g maps to 'X'")


def test_tower_exceptional_flags() -> None:
    z = Variety(name="Z", dim=3, primes=("z", "w"))
    y = Variety(name="Y", dim=2, primes=("y",))
    x = Variety(name="X", dim=1, primes=("x",))

    g = FibrationModel(total=z, base=y, fibers={"y": (entry("z", 1), entry("w", 1))})
    f = FibrationModel(total=y, base=x, fibers={"x": (entry("y", 1),)})
    fg = FibrationModel(
        total=z, base=x, fibers={"x": (entry("z", 1), entry("w", 1, exceptional=True))}
    )

    problems = TowerModel(g=g, f=f, fg=fg).problems()

    assert problems == [
        "fg-exceptional 'w' over 'x' is neither g-exceptional nor over an f-exceptional "
        "component."
    ]


def test_compose_base_strict(fibrations: Workspace) -> None:
    tower = fibrations.tower("tower")
    delta = fibrations.divisor("delta-z")

    composed = compose_base(tower, delta, Category.Q)

    assert composed.direct.m("x") == ExtMult(2)
    assert composed.staged.m("x") == ExtMult(6)
    assert check_comporb(tower, delta, Category.Q)

    composed = compose_base(tower, delta, Category.DIV)

    assert composed.direct.m("x") == ExtMult(2)
    assert composed.staged.m("x") == ExtMult(6)
    assert check_comporb(tower, delta, Category.DIV)


@pytest.mark.parametrize("cat", CATEGORIES)
def test_compose_base_saturated(fibrations: Workspace, cat: Category) -> None:
    tower = fibrations.tower("tower")
    delta = saturate_exceptional(tower.g, fibrations.divisor("delta-z"), cat)

    assert delta.m("z2") == ExtMult(6)

    composed = compose_base(tower, delta, cat)

    assert composed.direct == composed.staged


@pytest.mark.parametrize(("cat", "expected"), [(Category.Q, 4), (Category.DIV, 2)])
def test_compose_base_equal(fibrations: Workspace, cat: Category, expected: int) -> None:
    composed = compose_base(fibrations.tower("tower"), fibrations.divisor("delta-z-even"), cat)

    assert composed.direct == composed.staged
    assert composed.direct.m("x") == ExtMult(expected)


def test_compose_base_inconsistent(fibrations: Workspace) -> None:
    with pytest.raises(TowerInconsistency) as info:
        compose_base(fibrations.tower("broken"), fibrations.divisor("delta-z"), Category.Q)

    assert "fg is missing 'z2' over 'x'." in info.value.problems


@given(st.data())
def test_comporb_holds(data: st.DataObject) -> None:
    cat = data.draw(st.sampled_from(CATEGORIES))
    tower = data.draw(towers())
    delta = data.draw(divisors(tower.fg.total, integral=cat.requires_integral))

    assert check_comporb(tower, delta, cat)


@given(st.data())
def test_saturation_gives_equality(data: st.DataObject) -> None:
    cat = data.draw(st.sampled_from([Category.Q, Category.Z]))
    tower = data.draw(towers())
    delta = data.draw(divisors(tower.fg.total, integral=cat.requires_integral))

    composed = compose_base(tower, saturate_exceptional(tower.g, delta, cat), cat)

    assert composed.direct == composed.staged


@given(towers(single_parent=True), st.data())
def test_saturation_gives_equality_div(tower: TowerModel, data: st.DataObject) -> None:
    delta = data.draw(divisors(tower.fg.total, integral=True))

    composed = compose_base(tower, saturate_exceptional(tower.g, delta, Category.DIV), Category.DIV)

    assert composed.direct == composed.staged


# Fibration properties -----------------------------------------------------------------------------


@given(towers(), st.data())
def test_base_div_divides_base_q(tower: TowerModel, data: st.DataObject) -> None:
    model = tower.f
    delta = data.draw(divisors(model.total, integral=True))

    assert divisor_divides(
        base_orbifold(model, delta, Category.DIV),
        base_orbifold(model, delta, Category.Q),
    )


@given(towers(), st.data())
def test_base_is_a_morphism_target(tower: TowerModel, data: st.DataObject) -> None:
    cat = data.draw(st.sampled_from(CATEGORIES))
    model = tower.f
    delta = data.draw(divisors(model.total, integral=cat.requires_integral))

    base = base_orbifold(model, delta, cat)
    table = fibration_table(model, include_exceptional=False)

    assert check_morphism(delta, base, table, cat).ok

    saturated = saturate_exceptional(model, delta, cat)

    assert base_orbifold(model, saturated, cat) == base
    assert check_morphism(saturated, base, fibration_table(model), cat).ok


@given(towers(), st.data())
def test_base_is_maximal(tower: TowerModel, data: st.DataObject) -> None:
    cat = data.draw(st.sampled_from(CATEGORIES))
    model = tower.f
    delta = data.draw(divisors(model.total, integral=cat.requires_integral))
    candidate = data.draw(divisors(model.base, integral=cat.requires_integral))

    table = fibration_table(model, include_exceptional=False)

    if check_morphism(delta, candidate, table, cat).ok:
        base = base_orbifold(model, delta, cat)

        if cat is Category.DIV:
            assert divisor_divides(candidate, base)
        else:
            assert divisor_leq(candidate, base)


@given(towers(), st.data())
def test_base_monotone(tower: TowerModel, data: st.DataObject) -> None:
    model = tower.f
    a = data.draw(divisors(model.total))
    b = data.draw(divisors(model.total))

    if divisor_leq(a, b):
        assert divisor_leq(
            base_orbifold(model, a, Category.Q),
            base_orbifold(model, b, Category.Q),
        )
