from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import BaseModel, ValidationError

from orbcalc.main.errors import (
    EmptyInput,
    InfiniteMultiplicity,
    NonIntegralMultiplicity,
    OutOfRange,
    ParseError,
)
from orbcalc.main.multiplicity import (
    INF,
    INFINITY,
    ONE,
    ExtMult,
    ExtRational,
    Rational,
    ceil,
    clamp,
    coefficient,
    ext_gcd,
    ext_lcm,
    format_rational,
    mult_divides,
    mult_leq,
    parse_rational,
    ratio,
    scale,
)

from .strategies import finite_mults, mults


# Parsing ------------------------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("3", Fraction(3)),
        ("6/4", Fraction(3, 2)),
        ("-1/105", Fraction(-1, 105)),
        ("0", Fraction(0)),
    ],
)
def test_parse_rational(text: str, expected: Fraction) -> None:
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["", "1/0", "1.5", "+2", " 3", "3 ", "a/b", "1//2", "inf"])
def test_parse_rational_rejects(text: str) -> None:
    with pytest.raises(ParseError):
        parse_rational(text)


def test_format_rational() -> None:
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-1, 1722)) == "-1/1722"
    assert format_rational(Fraction(7)) == "7"


def test_parse_ext_mult() -> None:
    assert ExtMult.parse("inf") == INFINITY
    assert ExtMult.parse("5/2").finite == Fraction(5, 2)
    assert ExtRational.parse("1/3").finite == Fraction(1, 3)

    with pytest.raises(OutOfRange):
        ExtMult.parse("1/2")

    with pytest.raises(OutOfRange):
        ExtRational.parse("-1")


@given(mults())
def test_string_form_reparses(m: ExtMult) -> None:
    assert ExtMult.parse(str(m)) == m


def test_infinity_is_not_numeric() -> None:
    assert INFINITY.is_infinite
    assert INFINITY.is_integral
    assert INFINITY.value is INF

    with pytest.raises(InfiniteMultiplicity):
        _ = INFINITY.finite


def test_to_mult() -> None:
    assert ExtRational(3).to_mult() == ExtMult(3)
    assert ExtRational(INF).to_mult() == INFINITY

    with pytest.raises(OutOfRange):
        ExtRational(Fraction(1, 2)).to_mult()


class _Model(BaseModel):
    m: ExtMult
    t: Rational


def test_pydantic_fields() -> None:
    model = _Model.model_validate({"m": "inf", "t": "3/4"})

    assert model.m == INFINITY
    assert model.t == Fraction(3, 4)
    assert model.model_dump(mode="json") == {"m": "inf", "t": "3/4"}

    assert _Model.model_validate({"m": 2, "t": 1}).m == ExtMult(2)

    with pytest.raises(ValidationError):
        _Model.model_validate({"m": "1/2", "t": "1"})

    with pytest.raises(ValidationError):
        _Model.model_validate({"m": 1.5, "t": "1"})


# Coefficient --------------------------------------------------------------------------------------


def test_coefficient() -> None:
    assert coefficient(ONE) == 0
    assert coefficient(INFINITY) == 1
    assert coefficient(ExtMult(6)) == Fraction(5, 6)


@given(mults(), mults())
def test_coefficient_strictly_monotone(a: ExtMult, b: ExtMult) -> None:
    if a < b:
        assert coefficient(a) < coefficient(b)

    if coefficient(a) == coefficient(b):
        assert a == b


# Orders -------------------------------------------------------------------------------------------


def test_mult_leq() -> None:
    assert mult_leq(ExtMult(2), ExtMult(3))
    assert mult_leq(INFINITY, INFINITY)
    assert not mult_leq(INFINITY, ExtMult(5))


@given(mults(), mults(), mults())
def test_mult_leq_total_order(a: ExtMult, b: ExtMult, c: ExtMult) -> None:
    assert mult_leq(a, b) or mult_leq(b, a)

    if mult_leq(a, b) and mult_leq(b, a):
        assert a == b

    if mult_leq(a, b) and mult_leq(b, c):
        assert mult_leq(a, c)


def test_mult_divides() -> None:
    assert mult_divides(ExtMult(3), INFINITY)
    assert not mult_divides(INFINITY, ExtMult(12))
    assert mult_divides(ExtMult(2), ExtMult(6))
    assert not mult_divides(ExtMult(4), ExtMult(6))
    assert mult_divides(INFINITY, INFINITY)


def test_mult_divides_rejects_fractions() -> None:
    with pytest.raises(NonIntegralMultiplicity):
        mult_divides(ExtMult(Fraction(3, 2)), ExtMult(3))


@given(mults(integral=True), mults(integral=True))
def test_divides_implies_leq(a: ExtMult, b: ExtMult) -> None:
    if mult_divides(a, b):
        assert mult_leq(a, b)


# Lattice ------------------------------------------------------------------------------------------


def test_gcd_lcm() -> None:
    assert ext_gcd([ExtMult(3), ExtMult(5)]) == ONE
    assert ext_lcm([ExtMult(2), ExtMult(3)]) == ExtMult(6)
    assert ext_gcd([INFINITY, ExtMult(4)]) == ExtMult(4)
    assert ext_gcd([INFINITY, INFINITY]) == INFINITY
    assert ext_lcm([INFINITY, ExtMult(4)]) == INFINITY


def test_gcd_lcm_empty() -> None:
    with pytest.raises(EmptyInput):
        ext_gcd([])

    with pytest.raises(EmptyInput):
        ext_lcm([])


@given(st.lists(mults(integral=True), min_size=1, max_size=5))
def test_gcd_lcm_bounds(values: list[ExtMult]) -> None:
    gcd = ext_gcd(values)
    lcm = ext_lcm(values)

    for value in values:
        assert mult_divides(gcd, value)
        assert mult_divides(value, lcm)


@given(st.lists(mults(integral=True), min_size=1, max_size=4), mults(integral=True))
def test_gcd_is_greatest(values: list[ExtMult], candidate: ExtMult) -> None:
    if all(mult_divides(candidate, value) for value in values):
        assert mult_divides(candidate, ext_gcd(values))


@given(st.lists(mults(integral=True), min_size=1, max_size=4), mults(integral=True))
def test_lcm_is_least(values: list[ExtMult], candidate: ExtMult) -> None:
    if all(mult_divides(value, candidate) for value in values):
        assert mult_divides(ext_lcm(values), candidate)


# Arithmetic ---------------------------------------------------------------------------------------


def test_scale_ratio() -> None:
    assert scale(Fraction(2), ExtMult(3)) == ExtRational(6)
    assert scale(Fraction(1, 2), INFINITY) == ExtRational(INF)
    assert ratio(ExtMult(3), Fraction(2)) == ExtRational(Fraction(3, 2))
    assert ratio(INFINITY, Fraction(7)).is_infinite

    with pytest.raises(OutOfRange):
        scale(Fraction(0), ExtMult(2))


def test_clamp_ceil() -> None:
    assert clamp(ExtRational(Fraction(1, 3))) == ONE
    assert clamp(ExtRational(Fraction(5, 2))) == ExtMult(Fraction(5, 2))
    assert clamp(ExtRational(INF)) == INFINITY
    assert ceil(ExtRational(Fraction(5, 2))) == ExtRational(3)
    assert ceil(INFINITY) == INFINITY
    assert isinstance(ceil(ExtMult(Fraction(3, 2))), ExtMult)


@given(finite_mults(), st.fractions(min_value=Fraction(1, 8), max_value=8).filter(bool))
def test_ratio_inverts_scale(m: ExtMult, t: Fraction) -> None:
    assert ratio(scale(t, m), t) == m


def test_comparisons_with_numbers() -> None:
    assert ExtMult(2) == 2
    assert ExtMult(Fraction(3, 2)) > 1
    assert INFINITY > 10**9
    assert ExtMult(2) != "2"
    assert hash(ExtMult(4)) == hash(ExtRational(4))
