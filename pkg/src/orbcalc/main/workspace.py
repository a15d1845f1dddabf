from __future__ import annotations

from typing import TYPE_CHECKING, Any, TypeVar

from pydantic import (
    AliasGenerator,
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveInt,
    ValidationError,
)
from pydantic_core import InitErrorDetails, PydanticCustomError

from . import helpers
from .curve import OrbifoldCurve, classify_curve, curve_canonical_degree
from .divisor import DegreeData, OrbifoldDivisor, Variety
from .errors import OrbifoldError, UnknownEntity
from .fibration import ComponentEntry, FibrationModel, TowerModel
from .morphism import CoveringRamification, CurveContactData, PullbackTable, table_from_entries
from .multiplicity import ExtMult, Rational, format_rational


if TYPE_CHECKING:
    from collections.abc import Callable


T = TypeVar("T")


# Documents ----------------------------------------------------------------------------------------


class BaseDocument(BaseModel):
    # Accept both `field-name` and `field_name` as valid keys.
    model_config = ConfigDict(
        alias_generator=AliasGenerator(
            validation_alias=helpers.snake_to_kebab,
        ),
        populate_by_name=True,
        extra="forbid",
    )


class DegreeDocument(BaseDocument):
    canonical: Rational
    primes: dict[str, Rational]


class VarietyDocument(BaseDocument):
    name: str
    dim: NonNegativeInt
    primes: list[str]
    degree: DegreeDocument | None = None


class DivisorDocument(BaseDocument):
    variety: str
    mult: dict[str, ExtMult] = Field(default_factory=dict)


class CoefficientDocument(BaseDocument):
    e: str
    d: str
    t: Rational


class TableDocument(BaseDocument):
    source: str
    target: str
    coeff: list[CoefficientDocument] = Field(default_factory=list)


class ContactDocument(BaseDocument):
    d: str
    order: PositiveInt


class ContactPointDocument(BaseDocument):
    point: str
    contacts: list[ContactDocument] = Field(validation_alias="with")


class ContactDataDocument(BaseDocument):
    genus: NonNegativeInt
    contacts: list[ContactPointDocument] = Field(default_factory=list)


class CurveDocument(BaseDocument):
    genus: NonNegativeInt
    points: dict[str, ExtMult] = Field(default_factory=dict)


class ComponentDocument(BaseDocument):
    e: str
    m: PositiveInt
    exceptional: bool = False


class FibrationDocument(BaseDocument):
    total: str
    base: str
    fibers: dict[str, list[ComponentDocument]] = Field(default_factory=dict)


class TowerDocument(BaseDocument):
    g: str
    f: str
    fg: str


class CoveringDocument(BaseDocument):
    d: PositiveInt
    g_source: NonNegativeInt
    g_target: NonNegativeInt
    fibers: dict[str, list[PositiveInt]] = Field(default_factory=dict)
    m_source: dict[str, list[ExtMult]] | None = None
    m_target: dict[str, ExtMult] | None = None


class WorkspaceDocument(BaseDocument):
    varieties: list[VarietyDocument] = Field(default_factory=list)
    divisors: dict[str, DivisorDocument] = Field(default_factory=dict)
    tables: dict[str, TableDocument] = Field(default_factory=dict)
    contacts: dict[str, ContactDataDocument] = Field(default_factory=dict)
    curves: dict[str, CurveDocument] = Field(default_factory=dict)
    fibrations: dict[str, FibrationDocument] = Field(default_factory=dict)
    towers: dict[str, TowerDocument] = Field(default_factory=dict)
    coverings: dict[str, CoveringDocument] = Field(default_factory=dict)


# Workspace ----------------------------------------------------------------------------------------


class _Resolver:
    """Builds domain objects from documents, collecting every failure."""

    def __init__(self) -> None:
        self.errors: list[InitErrorDetails] = []

    def fail(self, loc: tuple[str | int, ...], message: str, value: Any = None) -> None:
        self.errors.append(
            InitErrorDetails(
                type=PydanticCustomError("workspace", "{message}", {"message": message}),
                loc=loc,
                input=value,
            )
        )

    def lookup(self, registry: dict[str, T], kind: str, name: str, loc: tuple) -> T | None:
        if name not in registry:
            self.fail(loc, f"Unknown {kind} '{name}'.", name)
            return None

        return registry[name]

    def build(self, loc: tuple, factory: Callable[[], T]) -> T | None:
        try:
            return factory()
        except ValidationError as error:
            for detail in error.errors():
                self.fail(loc + tuple(detail["loc"]), detail["msg"], detail.get("input"))
        except (OrbifoldError, ValueError) as error:
            self.fail(loc, str(error))

        return None


class Workspace:
    """Named entities of one input document, with every reference resolved."""

    def __init__(self) -> None:
        self.varieties: dict[str, Variety] = {}
        self.divisors: dict[str, OrbifoldDivisor] = {}
        self.tables: dict[str, PullbackTable] = {}
        self.contacts: dict[str, CurveContactData] = {}
        self.curves: dict[str, OrbifoldCurve] = {}
        self.fibrations: dict[str, FibrationModel] = {}
        self.towers: dict[str, TowerModel] = {}
        self.coverings: dict[str, CoveringRamification] = {}

    @classmethod
    def from_data(cls, data: dict) -> Workspace:
        """Validates and resolves a document. All-or-nothing.

        Raises:
            ValidationError: Every schema or reference problem found in the document.
        """

        document = WorkspaceDocument.model_validate(data)

        return cls.from_document(document)

    @classmethod
    def from_document(cls, document: WorkspaceDocument) -> Workspace:  # noqa: C901, PLR0912
        workspace = cls()
        resolver = _Resolver()

        for index, item in enumerate(document.varieties):
            loc = ("varieties", index)

            if item.name in workspace.varieties:
                resolver.fail(loc + ("name",), f"Duplicate variety '{item.name}'.", item.name)
                continue

            variety = resolver.build(loc, lambda item=item: _variety(item))

            if variety is not None:
                workspace.varieties[item.name] = variety

        for name, item in document.divisors.items():
            loc = ("divisors", name)
            variety = resolver.lookup(workspace.varieties, "variety", item.variety, loc)

            if variety is None:
                continue

            divisor = resolver.build(
                loc, lambda item=item, variety=variety: OrbifoldDivisor.of(variety, item.mult)
            )

            if divisor is not None:
                workspace.divisors[name] = divisor

        for name, item in document.tables.items():
            loc = ("tables", name)
            source = resolver.lookup(workspace.varieties, "variety", item.source, loc)
            target = resolver.lookup(workspace.varieties, "variety", item.target, loc)

            if source is None or target is None:
                continue

            table = resolver.build(
                loc,
                lambda item=item, source=source, target=target: table_from_entries(
                    source, target, [(entry.e, entry.d, entry.t) for entry in item.coeff]
                ),
            )

            if table is not None:
                workspace.tables[name] = table

        for name, item in document.contacts.items():
            contacts = resolver.build(("contacts", name), lambda item=item: _contacts(item))

            if contacts is not None:
                workspace.contacts[name] = contacts

        for name, item in document.curves.items():
            curve = resolver.build(
                ("curves", name),
                lambda item=item: OrbifoldCurve(genus=item.genus, points=item.points),
            )

            if curve is not None:
                workspace.curves[name] = curve

        for name, item in document.fibrations.items():
            loc = ("fibrations", name)
            total = resolver.lookup(workspace.varieties, "variety", item.total, loc)
            base = resolver.lookup(workspace.varieties, "variety", item.base, loc)

            if total is None or base is None:
                continue

            fibration = resolver.build(
                loc,
                lambda item=item, total=total, base=base: _fibration(item, total, base),
            )

            if fibration is not None:
                workspace.fibrations[name] = fibration

        for name, item in document.towers.items():
            loc = ("towers", name)
            parts = [
                resolver.lookup(workspace.fibrations, "fibration", reference, loc)
                for reference in (item.g, item.f, item.fg)
            ]

            if any(part is None for part in parts):
                continue

            g, f, fg = parts
            workspace.towers[name] = TowerModel(g=g, f=f, fg=fg)  # pyright: ignore [reportArgumentType]

        for name, item in document.coverings.items():
            covering = resolver.build(("coverings", name), lambda item=item: _covering(item))

            if covering is not None:
                workspace.coverings[name] = covering

        if resolver.errors:
            raise ValidationError.from_exception_data(
                title=cls.__name__,
                line_errors=resolver.errors,
            )

        return workspace

    def summary(self) -> dict[str, int]:
        return {
            "varieties": len(self.varieties),
            "divisors": len(self.divisors),
            "tables": len(self.tables),
            "contacts": len(self.contacts),
            "curves": len(self.curves),
            "fibrations": len(self.fibrations),
            "towers": len(self.towers),
            "coverings": len(self.coverings),
        }

    @staticmethod
    def _get(registry: dict[str, T], kind: str, name: str) -> T:
        try:
            return registry[name]
        except KeyError:
            raise UnknownEntity(kind, name) from None

    def variety(self, name: str) -> Variety:
        return self._get(self.varieties, "variety", name)

    def divisor(self, name: str) -> OrbifoldDivisor:
        return self._get(self.divisors, "divisor", name)

    def table(self, name: str) -> PullbackTable:
        return self._get(self.tables, "table", name)

    def contact(self, name: str) -> CurveContactData:
        return self._get(self.contacts, "contact data", name)

    def curve(self, name: str) -> OrbifoldCurve:
        return self._get(self.curves, "curve", name)

    def fibration(self, name: str) -> FibrationModel:
        return self._get(self.fibrations, "fibration", name)

    def tower(self, name: str) -> TowerModel:
        return self._get(self.towers, "tower", name)

    def covering(self, name: str) -> CoveringRamification:
        return self._get(self.coverings, "covering", name)


def _variety(item: VarietyDocument) -> Variety:
    degree = None

    if item.degree is not None:
        degree = DegreeData(canonical=item.degree.canonical, primes=item.degree.primes)

    return Variety(name=item.name, dim=item.dim, primes=tuple(item.primes), degree=degree)


def _contacts(item: ContactDataDocument) -> CurveContactData:
    contacts: dict[str, dict[str, int]] = {}

    for point in item.contacts:
        if point.point in contacts:
            raise ValueError(f"Duplicate contact point '{point.point}'.")

        orders: dict[str, int] = {}

        for contact in point.contacts:
            if contact.d in orders:
                raise ValueError(f"Point '{point.point}' lists '{contact.d}' twice.")

            orders[contact.d] = contact.order

        contacts[point.point] = orders

    return CurveContactData(genus=item.genus, contacts=contacts)


def _fibration(item: FibrationDocument, total: Variety, base: Variety) -> FibrationModel:
    return FibrationModel(
        total=total,
        base=base,
        fibers={
            d: tuple(
                ComponentEntry(
                    component=entry.e,
                    coefficient=entry.m,
                    exceptional=entry.exceptional,
                )
                for entry in entries
            )
            for d, entries in item.fibers.items()
        },
    )


def _covering(item: CoveringDocument) -> CoveringRamification:
    return CoveringRamification(
        degree=item.d,
        source_genus=item.g_source,
        target_genus=item.g_target,
        fibers={b: tuple(orders) for b, orders in item.fibers.items()},
        m_source=(
            None
            if item.m_source is None
            else {b: tuple(mults) for b, mults in item.m_source.items()}
        ),
        m_target=item.m_target,
    )


# Payloads -----------------------------------------------------------------------------------------


def divisor_payload(delta: OrbifoldDivisor) -> dict[str, Any]:
    return {
        "variety": delta.variety.name,
        "mult": {label: str(m) for label, m in delta.items()},
    }


def curve_payload(c: OrbifoldCurve) -> dict[str, Any]:
    curve_class = classify_curve(c)

    return {
        "genus": c.genus,
        "points": {label: str(m) for label, m in c.points.items()},
        "degree": format_rational(curve_canonical_degree(c)),
        "class": curve_class.value,
        "kappa": curve_class.kappa,
    }
