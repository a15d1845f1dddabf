from __future__ import annotations

from typing import Any

from rich.box import HEAVY, HEAVY_HEAD
from rich.padding import Padding
from rich.panel import Panel
from rich.pretty import Pretty
from rich.table import Table

from .shared import console


INDENT = "   "

ACCENT = "cyan"
VALUE = "green"
DEBUG = "red"

#          t  r            b  l
MARGIN = (1, len(INDENT), 1, len(INDENT))

TABLE_MARGIN = (1, len(INDENT), 0, len(INDENT))


# Tables -------------------------------------------------------------------------------------------


def table(title: str, columns: list[str], style: str = VALUE, **kwargs) -> Table:
    """Returns an empty stderr table with one column per header."""

    options: dict[str, Any] = {
        "box": HEAVY_HEAD,
        "border_style": ACCENT,
        "header_style": ACCENT,
        "expand": False,
    } | kwargs

    rendered = Table(title=title, **options)

    for header in columns:
        rendered.add_column(header=header, style=style)

    return rendered


def indented(renderable: Any, margin: tuple[int, int, int, int] = TABLE_MARGIN) -> Padding:
    return Padding(renderable, pad=margin, expand=False)


# Panels -------------------------------------------------------------------------------------------


def panel(renderable: Any, pretty: bool = False, **kwargs) -> Padding:
    if pretty:
        renderable = Pretty(renderable, expand_all=True)

    options: dict[str, Any] = {
        "box": HEAVY,
        "border_style": ACCENT,
        #           t  r  b  l
        "padding": (1, 3, 1, 3),
        "expand": False,
    } | kwargs

    return indented(Panel(renderable, **options), MARGIN)


def print_panel(renderable: Any, pretty: bool = False, **kwargs) -> None:
    console.print(panel(renderable, pretty, **kwargs))


def print_debug(renderable: Any, title: str) -> None:
    """Prints a value as a red panel. Only called in debug mode."""

    print_panel(renderable, pretty=True, title=title, border_style=DEBUG)
