from __future__ import annotations

from collections import Counter
from enum import StrEnum
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, field_validator

from .errors import GenusNotZero, InternalError, NonIntegralMultiplicity
from .multiplicity import ExtMult, coefficient


class CurveClass(StrEnum):
    RATIONAL = "rational"
    ELLIPTIC = "elliptic"
    GENERAL_TYPE = "general-type"

    @property
    def kappa(self) -> str:
        """Canonical dimension of K_C + Δ."""

        match self:
            case CurveClass.RATIONAL:
                return "-inf"
            case CurveClass.ELLIPTIC:
                return "0"
            case CurveClass.GENERAL_TYPE:
                return "1"
            case _:
                raise ValueError(f"Missing kappa for: {self}")


class OrbifoldCurve(BaseModel):
    """A curve of genus g with marked points of multiplicity > 1."""

    model_config = ConfigDict(frozen=True)

    genus: NonNegativeInt
    points: dict[str, ExtMult] = Field(default_factory=dict)

    @field_validator("points")
    @classmethod
    def validate_points(cls, value: dict[str, ExtMult]) -> dict[str, ExtMult]:
        trivial = sorted(label for label, m in value.items() if m <= 1)

        if trivial:
            raise ValueError(f"Marked points need multiplicity > 1: {', '.join(trivial)}.")

        return dict(sorted(value.items()))

    @property
    def multiplicities(self) -> list[ExtMult]:
        return list(self.points.values())

    @property
    def is_integral(self) -> bool:
        return all(m.is_integral for m in self.points.values())

    def require_integral(self) -> None:
        for label, m in self.points.items():
            if not m.is_integral:
                raise NonIntegralMultiplicity(f"Point '{label}' has multiplicity {m}.")


def signature(c: OrbifoldCurve) -> tuple[ExtMult, ...]:
    """The sorted multiset of multiplicities, ∞ last. Positions of points are irrelevant."""

    return tuple(sorted(c.multiplicities))


def curve_canonical_degree(c: OrbifoldCurve) -> Fraction:
    return 2 * c.genus - 2 + sum(
        (coefficient(m) for m in c.multiplicities),
        start=Fraction(0),
    )


def classify_curve(c: OrbifoldCurve) -> CurveClass:
    degree = curve_canonical_degree(c)

    if degree < 0:
        # With g ≥ 1 the degree is already ≥ 0.
        if c.genus != 0:
            raise InternalError(f"Negative degree {degree} on a curve of genus {c.genus}.")

        return CurveClass.RATIONAL

    if degree == 0:
        return CurveClass.ELLIPTIC

    return CurveClass.GENERAL_TYPE


def is_special_curve(c: OrbifoldCurve) -> bool:
    return curve_canonical_degree(c) <= 0


_SPHERICAL_TRIPLES = {
    (2, 3, 3),
    (2, 3, 4),
    (2, 3, 5),
}


def _is_spherical_triple(entries: tuple[ExtMult, ...]) -> bool:
    """(2,2,m) with m finite, or one of the platonic triples. `entries` is sorted."""

    if len(entries) != 3 or entries[-1].is_infinite:
        return False

    values = tuple(int(m.finite) for m in entries)

    return values[:2] == (2, 2) or values in _SPHERICAL_TRIPLES


def is_integer_rational_list(c: OrbifoldCurve) -> bool:
    """Membership of the multiplicities in the explicit list of Δ-rational integral curves.

    At most two points, anything but (∞, ∞). Three points: (2,2,m) with m < ∞, (2,3,3),
    (2,3,4) or (2,3,5).
    """

    if c.genus != 0:
        raise GenusNotZero(f"The rational list is for genus 0, got genus {c.genus}.")

    c.require_integral()

    entries = signature(c)

    if len(entries) <= 2:
        return not (len(entries) == 2 and all(m.is_infinite for m in entries))

    return _is_spherical_triple(entries)


def is_pi1_finite(c: OrbifoldCurve) -> bool:
    """Finiteness of the orbifold fundamental group.

    Points of multiplicity ∞ are punctures. Genus ≥ 1 is always infinite. In genus 0
    with punctures the group is finite only for (∞) and (∞, m). Without punctures it is
    finite exactly for at most two points or a spherical triple.
    """

    c.require_integral()

    if c.genus >= 1:
        return False

    entries = signature(c)
    punctures = Counter(m.is_infinite for m in entries)[True]

    if punctures:
        return punctures == 1 and len(entries) <= 2

    if len(entries) <= 2:
        return True

    return _is_spherical_triple(entries)
