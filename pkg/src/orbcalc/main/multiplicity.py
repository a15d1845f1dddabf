"""Exact multiplicities in ℚ≥1 ∪ {∞} and the two orders on them.

Finite values are `Fraction`s, so they are always in lowest terms and never overflow.
Infinity is the single member of the `Infinity` enum, never a numeric sentinel.
"""

from __future__ import annotations

import math
import re
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from typing import TYPE_CHECKING, Annotated, Any, ClassVar, Self

from pydantic_core import core_schema

from .errors import (
    EmptyInput,
    InfiniteMultiplicity,
    NonIntegralMultiplicity,
    OutOfRange,
    ParseError,
)


if TYPE_CHECKING:
    from collections.abc import Iterable

    from pydantic import GetCoreSchemaHandler


class Infinity(Enum):
    INF = "inf"

    def __str__(self) -> str:
        return self.value


INF = Infinity.INF


# Rationals ----------------------------------------------------------------------------------------


_PATTERN_RATIONAL = re.compile(r"(?P<numerator>-?[0-9]+)(?:/(?P<denominator>[0-9]+))?")


def parse_rational(text: str) -> Fraction:
    """Parses the strict textual form 'p/q' or 'p'.

    Args:
        text (str): The text to parse. No whitespace, decimals or '+' signs.

    Raises:
        ParseError: The text is not a rational or has a zero denominator.

    Returns:
        Fraction: The value in lowest terms.
    """

    match = _PATTERN_RATIONAL.fullmatch(text)

    if match is None:
        raise ParseError(f"Invalid rational '{text}', expected 'p/q' or 'p'.")

    denominator = int(match["denominator"] or 1)

    if denominator == 0:
        raise ParseError(f"Invalid rational '{text}', the denominator is zero.")

    return Fraction(int(match["numerator"]), denominator)


def format_rational(value: Fraction) -> str:
    return str(value)


def coerce_rational(value: Any) -> Fraction:
    match value:
        case bool():
            raise ParseError("Expected a rational, got a boolean.")
        case Fraction():
            return value
        case int():
            return Fraction(value)
        case str():
            return parse_rational(value)

    raise ParseError(f"Expected a rational string, got {type(value).__name__}.")


class _RationalAnnotation:
    @classmethod
    def __get_pydantic_core_schema__(
        cls, source_type: Any, handler: GetCoreSchemaHandler
    ) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            coerce_rational,
            serialization=core_schema.plain_serializer_function_ser_schema(format_rational),
        )


# A `Fraction` field that reads and writes the 'p/q' form.
Rational = Annotated[Fraction, _RationalAnnotation]


# Extended values ----------------------------------------------------------------------------------


@total_ordering
class ExtRational:
    """An exact rational ≥ 0, or ∞. Holds intermediate products such as t·m_Y(E)."""

    __slots__ = ("_value",)

    FLOOR: ClassVar[Fraction] = Fraction(0)

    def __init__(self, value: Fraction | int | Infinity) -> None:
        if isinstance(value, Infinity):
            self._value: Fraction | Infinity = value
            return

        if isinstance(value, bool) or not isinstance(value, int | Fraction):
            raise TypeError(f"Unsupported value type: {type(value).__name__}")

        value = Fraction(value)

        if value < self.FLOOR:
            raise OutOfRange(f"{type(self).__name__} must be >= {self.FLOOR}, got {value}.")

        self._value = value

    @classmethod
    def parse(cls, text: str) -> Self:
        if text == INF.value:
            return cls(INF)

        return cls(parse_rational(text))

    @classmethod
    def coerce(cls, value: Any) -> Self:
        match value:
            case cls():
                return value
            case ExtRational():
                return cls(value.value)
            case str():
                return cls.parse(value)
            case bool():
                pass
            case int() | Fraction():
                return cls(value)

        raise ParseError(f"Expected a multiplicity string, got {type(value).__name__}.")

    @classmethod
    def __get_pydantic_core_schema__(
        cls, source_type: Any, handler: GetCoreSchemaHandler
    ) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            cls.coerce,
            serialization=core_schema.plain_serializer_function_ser_schema(str),
        )

    @property
    def value(self) -> Fraction | Infinity:
        return self._value

    @property
    def is_infinite(self) -> bool:
        return self._value is INF

    @property
    def is_integral(self) -> bool:
        """Integral-or-∞, the entière condition."""
        return self.is_infinite or self.finite.denominator == 1

    @property
    def finite(self) -> Fraction:
        if isinstance(self._value, Infinity):
            raise InfiniteMultiplicity("Expected a finite value, got inf.")

        return self._value

    def to_mult(self) -> ExtMult:
        return ExtMult(self._value)

    def _key(self) -> tuple[int, Fraction]:
        return (1, Fraction(0)) if isinstance(self._value, Infinity) else (0, self._value)

    @staticmethod
    def _other(other: object) -> ExtRational | None:
        match other:
            case ExtRational():
                return other
            case bool():
                return None
            case int() | Fraction() if other >= 0:
                return ExtRational(other)

        return None

    def __eq__(self, other: object) -> bool:
        other = self._other(other)

        if other is None:
            return NotImplemented

        return self._value == other._value

    def __lt__(self, other: object) -> bool:
        other = self._other(other)

        if other is None:
            return NotImplemented

        return self._key() < other._key()

    def __hash__(self) -> int:
        return hash(self._value)

    def __str__(self) -> str:
        return INF.value if self.is_infinite else format_rational(self.finite)

    def __repr__(self) -> str:
        return f"{type(self).__name__}('{self}')"


class ExtMult(ExtRational):
    """A multiplicity: an exact rational ≥ 1, or ∞."""

    __slots__ = ()

    FLOOR: ClassVar[Fraction] = Fraction(1)


ONE = ExtMult(1)
INFINITY = ExtMult(INF)


# Operations ---------------------------------------------------------------------------------------


def coefficient(m: ExtMult) -> Fraction:
    """The coefficient 1 - 1/m of a prime in Δ, with 1/∞ = 0."""

    if m.is_infinite:
        return Fraction(1)

    return 1 - 1 / m.finite


def mult_leq(a: ExtRational, b: ExtRational) -> bool:
    return a <= b


def _integer(m: ExtRational) -> int | None:
    """The integer behind an integral-or-∞ value. `None` stands for ∞."""

    if m.is_infinite:
        return None

    if m.finite.denominator != 1:
        raise NonIntegralMultiplicity(f"Divisibility is undefined for the non-integer {m}.")

    return m.finite.numerator


def mult_divides(a: ExtRational, b: ExtRational) -> bool:
    """Integer divisibility extended by: every n divides ∞, ∞ divides only ∞."""

    a_int = _integer(a)
    b_int = _integer(b)

    if b_int is None:
        return True

    if a_int is None:
        return False

    return b_int % a_int == 0


def ext_gcd(values: Iterable[ExtRational]) -> ExtMult:
    """gcd with ∞ as the identity: gcd(∞, x) = x and the gcd of only ∞'s is ∞."""

    integers = [_integer(value) for value in values]

    if not integers:
        raise EmptyInput("gcd of an empty list.")

    finite = [integer for integer in integers if integer is not None]

    if not finite:
        return INFINITY

    return ExtMult(math.gcd(*finite))


def ext_lcm(values: Iterable[ExtRational]) -> ExtMult:
    """lcm with ∞ absorbing: lcm(∞, x) = ∞."""

    integers = [_integer(value) for value in values]

    if not integers:
        raise EmptyInput("lcm of an empty list.")

    if None in integers:
        return INFINITY

    return ExtMult(math.lcm(*integers))  # pyright: ignore [reportArgumentType]


def _positive(t: Fraction) -> Fraction:
    if t <= 0:
        raise OutOfRange(f"Coefficients must be positive, got {t}.")

    return t


def scale(t: Fraction, m: ExtRational) -> ExtRational:
    """t·m for a positive rational t, with t·∞ = ∞."""

    t = _positive(Fraction(t))

    if m.is_infinite:
        return ExtRational(INF)

    return ExtRational(t * m.finite)


def ratio(m: ExtRational, t: Fraction) -> ExtRational:
    """m/t for a positive rational t, with ∞/t = ∞."""

    t = _positive(Fraction(t))

    if m.is_infinite:
        return ExtRational(INF)

    return ExtRational(m.finite / t)


def clamp(x: ExtRational) -> ExtMult:
    """max(1, x)."""

    if x.is_infinite:
        return INFINITY

    return ExtMult(max(Fraction(1), x.finite))


def ceil[T: ExtRational](x: T) -> T:
    if x.is_infinite:
        return x

    return type(x)(math.ceil(x.finite))
