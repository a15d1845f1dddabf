from __future__ import annotations

import json
from contextlib import contextmanager
from typing import TYPE_CHECKING, Any

from pydantic import ValidationError
from rich.box import HEAVY
from rich.panel import Panel
from typer import Exit, echo

from . import errors, helpers, ui
from .config import CONFIG, ConfigManager
from .errors import (
    ConfigReadError,
    ConfigValidationError,
    OrbifoldError,
    WorkspaceReadError,
    WorkspaceValidationError,
)
from .shared import App, ExitCode, console
from .workspace import Workspace


if TYPE_CHECKING:
    from collections.abc import Iterator
    from pathlib import Path


# Config -------------------------------------------------------------------------------------------


def load_config(user: bool) -> None:
    try:
        CONFIG.load(user)
    except ConfigValidationError as error:
        errors.print_config_validation_errors(error)
        message = f"{helpers.format_path(error.path)}: {_first_validation_message(error.source)}"
        _fail_without_config(error.reason, message)
    except ConfigReadError as error:
        errors.print_config_read_error(error)
        _fail_without_config(error.reason, f"{helpers.format_path(error.path)}: {error}")

    if CONFIG.debug:
        ui.print_debug(
            {
                "sources": [helpers.format_path(path) for path in CONFIG.sources],
                "config": CONFIG.dump(),
            },
            title="Config",
        )


def save_config_file(
    destination: Path | None = None,
    create_destination: bool = True,
    force: bool = False,
) -> None:
    style1 = "cyan"
    style2 = "yellow"

    source = ConfigManager.DEFAULT_LOCATION

    destination = destination or App.PATH_USER_DATA
    destination = destination.resolve()

    config_file = destination / source.name

    text_destination = f"[{style2}]{helpers.format_path(destination)}[/{style2}]"

    ui.print_panel(
        f"[{style1}]Initializing config file in {text_destination}...[/{style1}]"
    )

    if helpers.copy_file(source, destination, create_destination, force):
        config_file.write_text(build_config_file_header(config_file), encoding="utf-8")


def build_config_file_header(path: Path, width: int = 88) -> str:
    comment_prefix = "# "

    header = Panel(
        "\n".join(
            [
                f"{App.NAME_FULL} v{App.VERSION}",
                f"  Run `{App.NAME} config` to print the resolved configuration.",
            ]
        ),
        width=width - len(comment_prefix),
        padding=(1, 3),
        box=HEAVY,
    )

    with console.capture() as capture:
        console.print(header)

    header = "\n".join(
        [f"{comment_prefix}{line}" for line in capture.get().splitlines()],
    )

    header = "".join(
        [
            f"{comment_prefix}{helpers.format_path(path)}",
            f"\n{comment_prefix}",
            f"\n{header}",
            "\n\n\n\n",
            f"{path.read_text(encoding='utf-8').strip()}\n",
        ]
    )

    return "\n".join([line.rstrip() for line in header.splitlines()]) + "\n"


# Workspace ----------------------------------------------------------------------------------------


def load_workspace(name: str) -> Workspace:
    try:
        data = helpers.read_serialized_stream(name)
    except Exception as error:
        raise WorkspaceReadError(error, name) from error

    try:
        workspace = Workspace.from_data(data)
    except ValidationError as error:
        raise WorkspaceValidationError(error, name) from error

    if CONFIG.debug:
        ui.print_debug(workspace.summary(), title=f"Workspace: {name}")

    return workspace


# Output -------------------------------------------------------------------------------------------


def dumps(payload: Any) -> str:
    output = CONFIG.cfg.output

    return json.dumps(
        payload,
        indent=None if output.compact else output.indent,
        sort_keys=output.sort_keys,
        ensure_ascii=False,
    )


def emit(payload: dict[str, Any], ok: bool = True) -> None:
    """Writes a result document to stdout. `ok=False` exits with the checked-false code."""

    echo(dumps(payload))

    if CONFIG.debug:
        ui.print_debug(payload, title="Result")

    if not ok:
        raise Exit(code=ExitCode.CHECKED_FALSE)


def error_document(reason: str, message: str) -> dict[str, Any]:
    return {"ok": False, "error": {"reason": reason, "message": message}}


def fail(reason: str, message: str) -> None:
    echo(dumps(error_document(reason, message)))

    raise Exit(code=ExitCode.INPUT_ERROR)


def _fail_without_config(reason: str, message: str) -> None:
    # Output settings come from the config that just failed to load.
    echo(json.dumps(error_document(reason, message), ensure_ascii=False))

    raise Exit(code=ExitCode.INPUT_ERROR)


@contextmanager
def reporting_errors() -> Iterator[None]:
    """Turns domain and input errors into an error document and exit code 2."""

    try:
        yield
    except OrbifoldError as error:
        errors.print_orbifold_error(error)
        fail(error.reason, error.message)
    except WorkspaceValidationError as error:
        errors.print_workspace_validation_errors(error)
        fail(error.reason, _first_validation_message(error.source))
    except WorkspaceReadError as error:
        errors.print_workspace_read_error(error)
        fail(error.reason, str(error))


def _first_validation_message(source: ValidationError) -> str:
    details = source.errors()
    first = details[0]
    location = ".".join(str(loc) for loc in first["loc"]) or "<root>"

    more = f" (+{len(details) - 1} more)" if len(details) > 1 else ""

    return f"{location}: {first['msg']}{more}"
