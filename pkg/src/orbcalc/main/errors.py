from __future__ import annotations

from typing import TYPE_CHECKING

from . import helpers, ui
from .shared import console
from .ui import INDENT


if TYPE_CHECKING:
    from pathlib import Path

    from pydantic import ValidationError


# Domain -------------------------------------------------------------------------------------------


class OrbifoldError(Exception):
    """Base of every error raised by the orbifold calculus.

    `reason` is the stable, machine-readable code reported by the CLI.
    """

    reason = "orbifold-error"

    def __init__(self, message: str) -> None:
        super().__init__(message)

        self.message = message


class NonIntegralMultiplicity(OrbifoldError):
    reason = "non-integral-multiplicity"


class NonIntegralCoefficient(OrbifoldError):
    reason = "non-integral-coefficient"


class InfiniteMultiplicity(OrbifoldError):
    reason = "infinite-multiplicity"


class EmptyInput(OrbifoldError):
    reason = "empty-input"


class VarietyMismatch(OrbifoldError):
    reason = "variety-mismatch"

    def __init__(self, expected: str, actual: str) -> None:
        super().__init__(f"Expected variety '{expected}', got '{actual}'.")

        self.expected = expected
        self.actual = actual


class MissingDegreeData(OrbifoldError):
    reason = "missing-degree-data"

    def __init__(self, variety: str) -> None:
        super().__init__(f"Variety '{variety}' has no degree data.")

        self.variety = variety


class NotALineModel(OrbifoldError):
    reason = "not-a-line-model"


class GenusNotZero(OrbifoldError):
    reason = "genus-not-zero"


class MissingMultiplicity(OrbifoldError):
    reason = "missing-multiplicity"


class FiberSumMismatch(OrbifoldError):
    reason = "fiber-sum-mismatch"


class NoNonExceptionalComponent(OrbifoldError):
    reason = "no-non-exceptional-component"


class TowerInconsistency(OrbifoldError):
    reason = "tower-inconsistency"

    def __init__(self, problems: list[str]) -> None:
        super().__init__("; ".join(problems))

        self.problems = problems


class DimensionTooLarge(OrbifoldError):
    reason = "dimension-too-large"


class UnknownEntity(OrbifoldError):
    reason = "unknown-entity"

    def __init__(self, kind: str, name: str) -> None:
        super().__init__(f"No {kind} named '{name}' in the workspace.")

        self.kind = kind
        self.name = name


# These fire inside pydantic validators, which only collect `ValueError`s.


class ParseError(OrbifoldError, ValueError):
    reason = "parse-error"


class OutOfRange(OrbifoldError, ValueError):
    reason = "out-of-range"


# Application --------------------------------------------------------------------------------------


class InternalError(Exception):
    def __init__(self, message: str) -> None:
        super().__init__(message)


class ConfigValidationError(Exception):
    reason = "config-validation-error"

    def __init__(self, source: ValidationError, path: Path) -> None:
        super().__init__(f"{source.error_count()} validation error(s) in '{path}'.")

        self.source = source
        self.path = path


class ConfigReadError(Exception):
    reason = "config-read-error"

    def __init__(self, source: Exception, path: Path) -> None:
        super().__init__(f"{source.__class__.__name__}: {source}")

        self.source = source
        self.path = path


class WorkspaceReadError(Exception):
    reason = "workspace-read-error"

    def __init__(self, source: Exception, name: str) -> None:
        super().__init__(f"{source.__class__.__name__}: {source}")

        self.source = source
        self.name = name


class WorkspaceValidationError(Exception):
    reason = "workspace-validation-error"

    def __init__(self, source: ValidationError, name: str) -> None:
        super().__init__(f"{source.error_count()} validation error(s) in '{name}'.")

        self.source = source
        self.name = name


# Printing -----------------------------------------------------------------------------------------


def _print_validation_errors(source: ValidationError) -> None:
    for error in source.errors():
        message = error.get("msg")
        location = ".".join([str(loc) for loc in error.get("loc")]) or "<root>"

        if not message.endswith("."):
            message = f"{message}."

        lines = [
            f"{INDENT}[red]{location}[/red]",
            f"{INDENT * 2}{message}",
        ]

        console.print("\n".join(lines), highlight=False)


def print_config_validation_errors(exception: ConfigValidationError) -> None:
    text_user_files = helpers.format_path(exception.path)

    ui.print_panel(
        f"Error validating [green]{exception.path.name}[/green] "
        f"in [yellow]{text_user_files}[/yellow].",
    )

    _print_validation_errors(exception.source)


def print_config_read_error(exception: ConfigReadError) -> None:
    text_user_files = helpers.format_path(exception.path)

    ui.print_panel(
        f"Error reading [green]{exception.path.name}[/green] "
        f"in [yellow]{text_user_files}[/yellow].",
    )

    console.print(
        f"{INDENT}[red]{exception.source.__class__.__name__}[/red]: {exception.source}"
    )


def print_workspace_validation_errors(exception: WorkspaceValidationError) -> None:
    ui.print_panel(
        f"Error validating workspace [green]{exception.name}[/green].",
        border_style="red",
    )

    _print_validation_errors(exception.source)


def print_workspace_read_error(exception: WorkspaceReadError) -> None:
    ui.print_panel(
        f"Error reading workspace [green]{exception.name}[/green].",
        border_style="red",
    )

    console.print(f"{INDENT}[red]{exception.source.__class__.__name__}[/red]: {exception.source}")


def print_orbifold_error(exception: OrbifoldError) -> None:
    ui.print_panel(
        f"[red]{exception.reason}[/red]\n\n{exception.message}",
        border_style="red",
    )
