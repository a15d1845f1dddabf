from __future__ import annotations

import textwrap

from rich.console import Group
from rich.padding import Padding
from rich.text import Text

from . import ui
from .shared import TYPE_DIMENSION_MAX, Category, ExitCode
from .typeseq import count_types


def _generate_table_categories() -> Padding:
    style1 = "cyan"

    table = ui.table(
        title=f"[{style1}]Orbifold categories accepted by [yellow]--cat[/yellow].[/{style1}]",
        columns=["Name", "Ordering", "Integral Only", "Morphism Condition"],
    )

    for category in Category:
        table.add_row(
            category.value,
            category.ordering,
            "yes" if category.requires_integral else "no",
            category.description,
        )

    return ui.indented(table)


_EXIT_CODE_DESCRIPTIONS = {
    ExitCode.OK: "The command succeeded. Boolean checks returned true.",
    ExitCode.CHECKED_FALSE: "A boolean check returned false. The result is still printed.",
    ExitCode.INPUT_ERROR: "Invalid input or a domain error. An error document is printed.",
}


def _generate_table_exit_codes() -> Padding:
    style1 = "cyan"

    table = ui.table(
        title=f"[{style1}]Exit codes.[/{style1}]",
        columns=["Code", "Name", "Description"],
    )

    for code in ExitCode:
        table.add_row(
            str(code.value),
            code.name.lower().replace("_", "-"),
            _EXIT_CODE_DESCRIPTIONS[code],
        )

    return ui.indented(table)


def _generate_table_types() -> Padding:
    style1 = "cyan"

    table = ui.table(
        title=f"[{style1}]Number of type sequences per dimension.[/{style1}]",
        columns=["Dimension", "Count"],
    )

    for n in range(TYPE_DIMENSION_MAX + 1):
        table.add_row(str(n), f"{count_types(n):,}")

    description = textwrap.wrap(
        text=textwrap.dedent(
            """
            Counts follow c(0) = 1, c(1) = 3 and c(n+1) = 3c(n) - c(n-1). Enumeration is
            capped at the last dimension listed; counting is not.
            """
        ),
        width=95,
    )

    description = Text(
        "\n".join(description),
        style=style1,
        justify="left",
    )

    group = Group(description, "\n", table)

    return ui.indented(group)


TABLE_CATEGORIES = _generate_table_categories()
TABLE_EXIT_CODES = _generate_table_exit_codes()
TABLE_TYPES = _generate_table_types()
