from __future__ import annotations

from enum import StrEnum
from pathlib import Path
from typing import Annotated, Any

import tomli_w
from typer import Argument, Exit, Option, Typer, echo

from . import app, ui
from .config import CONFIG
from .curve import (
    curve_canonical_degree,
    is_integer_rational_list,
    is_pi1_finite,
    is_special_curve,
)
from .divisor import (
    canonical_degree,
    is_fano,
    plane_rational_expected_dim,
    sylvester_degree,
    sylvester_multiplicities,
)
from .fibration import base_orbifold, check_comporb, compose_base, saturate_exceptional
from .morphism import (
    check_etale_covering,
    check_morphism,
    minimal_lift,
    restrict_to_curve,
    riemann_hurwitz,
)
from .multiplicity import format_rational
from .shared import App, Category, console
from .tables import TABLE_CATEGORIES, TABLE_EXIT_CODES, TABLE_TYPES
from .typeseq import count_types, enumerate_types
from .workspace import curve_payload, divisor_payload


TYPER_CONFIG = {
    "add_completion": False,
    "no_args_is_help": True,
    "rich_markup_mode": "rich",
    "context_settings": {
        "help_option_names": [
            "-h",
            "--help",
        ],
    },
}


cli = Typer(
    **TYPER_CONFIG,  # pyright: ignore [reportArgumentType]
    help="Exact calculus of geometric orbifolds over JSON workspaces.",
)


def version_callback(value: bool) -> None:
    if value:
        console.print(f"{App.NAME_FULL} [green]v{App.VERSION}[/green]")
        raise Exit


@cli.callback()
def main_cli(
    _: Annotated[
        bool,
        Option(
            "-v",
            "--version",
            help="Print version and exit.",
            callback=version_callback,
            is_eager=True,
        ),
    ] = False,
    debug: Annotated[
        bool,
        Option(
            "-d",
            "--debug",
            help="Print debug info.",
        ),
    ] = False,
) -> None:
    CONFIG.debug = debug

    app.load_config(user=True)


# Shared Args --------------------------------------------------------------------------------------


arg_input = Annotated[
    str,
    Option(
        "-i",
        "--input",
        help=(
            "Workspace document: a [green].json[/green], [green].toml[/green] or "
            "[green].yaml[/green] file, or [yellow]-[/yellow] for JSON on stdin."
        ),
        metavar="FILE",
    ),
]

arg_category = Annotated[
    Category | None,
    Option(
        "-c",
        "--cat",
        help=(
            f"Orbifold category. Run [cyan]'{App.NAME} info categories'[/cyan] for details. "
            "[dim]default: from config[/dim]"
        ),
        show_default=False,
    ),
]

arg_force = Annotated[
    bool,
    Option(
        "--force",
        help="Overwrite existing file.",
        show_default=False,
    ),
]


def _entity(help_text: str) -> Any:
    return Argument(help=help_text, show_default=False)


def resolve_category(cat: Category | None) -> Category:
    return cat or CONFIG.cfg.options.category


def print_args(**kwargs: Any) -> None:
    if CONFIG.debug:
        ui.print_debug(
            {key: str(value) for key, value in kwargs.items()},
            title="Command Args",
        )


# Command: degree ----------------------------------------------------------------------------------


@cli.command(
    name="degree",
    no_args_is_help=True,
    short_help="Canonical degree of an orbifold divisor.",
    rich_help_panel="Divisors",
)
def run_command_degree(
    divisor: Annotated[str, _entity("Name of a divisor in the workspace.")],
    path: arg_input = App.STDIN,
) -> None:
    """Print the canonical degree deg(K_X + Δ) of an orbifold divisor."""

    print_args(divisor=divisor, input=path)

    with app.reporting_errors():
        delta = app.load_workspace(path).divisor(divisor)
        payload = {"degree": format_rational(canonical_degree(delta))}

    app.emit(payload)


# Command: fano ------------------------------------------------------------------------------------


@cli.command(
    name="fano",
    no_args_is_help=True,
    short_help="Whether an orbifold divisor is Fano.",
    rich_help_panel="Divisors",
)
def run_command_fano(
    divisor: Annotated[str, _entity("Name of a divisor in the workspace.")],
    path: arg_input = App.STDIN,
) -> None:
    """Whether the canonical degree is negative. Exits with 1 when it is not."""

    print_args(divisor=divisor, input=path)

    with app.reporting_errors():
        delta = app.load_workspace(path).divisor(divisor)
        fano = is_fano(delta)
        payload = {"fano": fano, "degree": format_rational(canonical_degree(delta))}

    app.emit(payload, ok=fano)


# Command: expected-dim ----------------------------------------------------------------------------


@cli.command(
    name="expected-dim",
    no_args_is_help=True,
    short_help="Expected dimension of Δ-rational plane curves of a degree.",
    rich_help_panel="Divisors",
)
def run_command_expected_dim(
    divisor: Annotated[str, _entity("Name of a divisor on a plane line model.")],
    d: Annotated[int, Argument(help="Degree of the curves.", show_default=False)],
    path: arg_input = App.STDIN,
) -> None:
    """Print (3d - 1) - d·Σ(1 - 1/m_j) for degree-d plane curves against the lines of Δ."""

    print_args(divisor=divisor, d=d, input=path)

    with app.reporting_errors():
        delta = app.load_workspace(path).divisor(divisor)
        payload = {"expected_dim": format_rational(plane_rational_expected_dim(delta, d))}

    app.emit(payload)


# Command: sylvester -------------------------------------------------------------------------------


@cli.command(
    name="sylvester",
    no_args_is_help=True,
    short_help="Fano hyperplane orbifolds on ℙⁿ of smallest known degree.",
    rich_help_panel="Divisors",
)
def run_command_sylvester(
    n: Annotated[int, Argument(help="Dimension of the projective space.", show_default=False)],
) -> None:
    """Print the hyperplane multiplicities built from Sylvester's sequence and their degree."""

    print_args(n=n)

    with app.reporting_errors():
        payload = {
            "n": n,
            "multiplicities": [str(m) for m in sylvester_multiplicities(n)],
            "degree": format_rational(sylvester_degree(n)),
        }

    app.emit(payload)


# Command: classify-curve --------------------------------------------------------------------------


@cli.command(
    name="classify-curve",
    no_args_is_help=True,
    short_help="Rational, elliptic or general type.",
    rich_help_panel="Curves",
)
def run_command_classify_curve(
    curve: Annotated[str, _entity("Name of a curve in the workspace.")],
    path: arg_input = App.STDIN,
) -> None:
    """Classify an orbifold curve by the sign of its canonical degree."""

    print_args(curve=curve, input=path)

    with app.reporting_errors():
        payload = curve_payload(app.load_workspace(path).curve(curve))

    app.emit(payload)


# Command: pi1-finite ------------------------------------------------------------------------------


@cli.command(
    name="pi1-finite",
    no_args_is_help=True,
    short_help="Whether the orbifold fundamental group is finite.",
    rich_help_panel="Curves",
)
def run_command_pi1_finite(
    curve: Annotated[str, _entity("Name of an integral curve in the workspace.")],
    path: arg_input = App.STDIN,
) -> None:
    """Whether π₁ of an integral orbifold curve is finite. Exits with 1 when it is not."""

    print_args(curve=curve, input=path)

    with app.reporting_errors():
        finite = is_pi1_finite(app.load_workspace(path).curve(curve))

    app.emit({"finite": finite}, ok=finite)


# Command: special ---------------------------------------------------------------------------------


@cli.command(
    name="special",
    no_args_is_help=True,
    short_help="Whether a curve is special.",
    rich_help_panel="Curves",
)
def run_command_special(
    curve: Annotated[str, _entity("Name of a curve in the workspace.")],
    path: arg_input = App.STDIN,
) -> None:
    """Whether the canonical degree is at most 0. Exits with 1 when it is not."""

    print_args(curve=curve, input=path)

    with app.reporting_errors():
        c = app.load_workspace(path).curve(curve)
        special = is_special_curve(c)
        payload = {"special": special, "degree": format_rational(curve_canonical_degree(c))}

    app.emit(payload, ok=special)


# Command: rational-list ---------------------------------------------------------------------------


@cli.command(
    name="rational-list",
    no_args_is_help=True,
    short_help="Membership in the list of integral Δ-rational curves.",
    rich_help_panel="Curves",
)
def run_command_rational_list(
    curve: Annotated[str, _entity("Name of an integral genus 0 curve in the workspace.")],
    path: arg_input = App.STDIN,
) -> None:
    """Whether the multiplicities are in the explicit rational list. Exits with 1 when absent."""

    print_args(curve=curve, input=path)

    with app.reporting_errors():
        member = is_integer_rational_list(app.load_workspace(path).curve(curve))

    app.emit({"member": member}, ok=member)


# Command: check-morphism --------------------------------------------------------------------------


@cli.command(
    name="check-morphism",
    no_args_is_help=True,
    short_help="Whether a map is an orbifold morphism.",
    rich_help_panel="Morphisms",
)
def run_command_check_morphism(
    delta_y: Annotated[str, _entity("Divisor on the source.")],
    delta_x: Annotated[str, _entity("Divisor on the target.")],
    table: Annotated[str, _entity("Pullback table of the map.")],
    path: arg_input = App.STDIN,
    cat: arg_category = None,
) -> None:
    """Check every pullback coefficient against the category. Exits with 1 on a violation."""

    category = resolve_category(cat)

    print_args(delta_y=delta_y, delta_x=delta_x, table=table, input=path, cat=category)

    with app.reporting_errors():
        workspace = app.load_workspace(path)
        report = check_morphism(
            workspace.divisor(delta_y),
            workspace.divisor(delta_x),
            workspace.table(table),
            category,
        )

    app.emit(report.model_dump(mode="json"), ok=report.ok)


# Command: lift ------------------------------------------------------------------------------------


@cli.command(
    name="lift",
    no_args_is_help=True,
    short_help="Least source divisor making a map a morphism.",
    rich_help_panel="Morphisms",
)
def run_command_lift(
    delta_x: Annotated[str, _entity("Divisor on the target.")],
    table: Annotated[str, _entity("Pullback table of the map.")],
    path: arg_input = App.STDIN,
    cat: arg_category = None,
) -> None:
    """Print the minimal lift of a target divisor along a pullback table."""

    category = resolve_category(cat)

    print_args(delta_x=delta_x, table=table, input=path, cat=category)

    with app.reporting_errors():
        workspace = app.load_workspace(path)
        lift = minimal_lift(workspace.divisor(delta_x), workspace.table(table), category)

    app.emit(divisor_payload(lift))


# Command: restrict --------------------------------------------------------------------------------


@cli.command(
    name="restrict",
    no_args_is_help=True,
    short_help="Orbifold structure induced on a curve.",
    rich_help_panel="Morphisms",
)
def run_command_restrict(
    delta_x: Annotated[str, _entity("Divisor on the ambient variety.")],
    contacts: Annotated[str, _entity("Contact data of the curve.")],
    path: arg_input = App.STDIN,
    cat: arg_category = None,
) -> None:
    """Restrict a divisor to a curve and classify the result."""

    category = resolve_category(cat)

    print_args(delta_x=delta_x, contacts=contacts, input=path, cat=category)

    with app.reporting_errors():
        workspace = app.load_workspace(path)
        curve = restrict_to_curve(workspace.divisor(delta_x), workspace.contact(contacts), category)
        payload = curve_payload(curve)

    app.emit(payload)


# Command: base ------------------------------------------------------------------------------------


@cli.command(
    name="base",
    no_args_is_help=True,
    short_help="Base orbifold of a fibration.",
    rich_help_panel="Fibrations",
)
def run_command_base(
    fibration: Annotated[str, _entity("Name of a fibration in the workspace.")],
    delta_y: Annotated[str, _entity("Divisor on the total space.")],
    path: arg_input = App.STDIN,
    cat: arg_category = None,
    saturate: Annotated[
        bool,
        Option(
            "--saturate",
            help="Also print the total-space divisor raised along exceptional components.",
            show_default=False,
        ),
    ] = False,
) -> None:
    """Print the base orbifold of a fibration."""

    category = resolve_category(cat)

    print_args(fibration=fibration, delta_y=delta_y, input=path, cat=category, saturate=saturate)

    with app.reporting_errors():
        workspace = app.load_workspace(path)
        model = workspace.fibration(fibration)
        delta = workspace.divisor(delta_y)

        payload: dict[str, Any] = {"base": divisor_payload(base_orbifold(model, delta, category))}

        if saturate:
            payload["saturated"] = divisor_payload(saturate_exceptional(model, delta, category))

    app.emit(payload)


# Command: compose-check ---------------------------------------------------------------------------


@cli.command(
    name="compose-check",
    no_args_is_help=True,
    short_help="Compare the base of a composite with the staged base.",
    rich_help_panel="Fibrations",
)
def run_command_compose_check(
    tower: Annotated[str, _entity("Name of a tower in the workspace.")],
    delta_z: Annotated[str, _entity("Divisor on the top total space.")],
    path: arg_input = App.STDIN,
    cat: arg_category = None,
) -> None:
    """Whether the direct base is below (or divides) the staged one. Exits with 1 if not."""

    category = resolve_category(cat)

    print_args(tower=tower, delta_z=delta_z, input=path, cat=category)

    with app.reporting_errors():
        workspace = app.load_workspace(path)
        model = workspace.tower(tower)
        delta = workspace.divisor(delta_z)

        composed = compose_base(model, delta, category)
        ok = check_comporb(model, delta, category)

        payload = {
            "ok": ok,
            "direct": divisor_payload(composed.direct),
            "staged": divisor_payload(composed.staged),
        }

    app.emit(payload, ok=ok)


# Command: etale -----------------------------------------------------------------------------------


@cli.command(
    name="etale",
    no_args_is_help=True,
    short_help="Whether a covering of curves is orbifold-étale.",
    rich_help_panel="Coverings",
)
def run_command_etale(
    covering: Annotated[str, _entity("Name of a covering in the workspace.")],
    path: arg_input = App.STDIN,
) -> None:
    """Check e·m' = m at every point of every fiber. Exits with 1 when it fails."""

    print_args(covering=covering, input=path)

    with app.reporting_errors():
        etale = check_etale_covering(app.load_workspace(path).covering(covering))

    app.emit({"etale": etale}, ok=etale)


# Command: riemann-hurwitz -------------------------------------------------------------------------


@cli.command(
    name="riemann-hurwitz",
    no_args_is_help=True,
    short_help="Riemann–Hurwitz identity and bounds of a covering.",
    rich_help_panel="Coverings",
)
def run_command_riemann_hurwitz(
    covering: Annotated[str, _entity("Name of a covering in the workspace.")],
    path: arg_input = App.STDIN,
) -> None:
    """Print both sides of the identity and the min and gcd lower bounds."""

    print_args(covering=covering, input=path)

    with app.reporting_errors():
        report = riemann_hurwitz(app.load_workspace(path).covering(covering))

    app.emit(report.model_dump(mode="json"))


# Command: types -----------------------------------------------------------------------------------


types_cli = Typer(
    **TYPER_CONFIG,  # pyright: ignore [reportArgumentType]
    help="Type sequences of a given dimension.",
)

cli.add_typer(types_cli, name="types", rich_help_panel="Types")

arg_dimension = Annotated[
    int,
    Argument(help="Dimension n.", show_default=False),
]


@types_cli.command(
    name="enumerate",
    no_args_is_help=True,
    short_help="List every type sequence of dimension n.",
)
def run_command_types_enumerate(
    n: arg_dimension,
    lines: Annotated[
        bool,
        Option(
            "--lines",
            help="One comma-separated sequence per line instead of JSON.",
            show_default=False,
        ),
    ] = False,
) -> None:
    """List the type sequences of dimension n in lexicographic order."""

    limit = CONFIG.cfg.limits.max_type_dimension

    print_args(n=n, lines=lines, limit=limit)

    with app.reporting_errors():
        sequences = [sequence.format() for sequence in enumerate_types(n, limit=limit)]

    if lines:
        for sequence in sequences:
            echo(sequence)
        return

    app.emit({"n": n, "count": len(sequences), "types": sequences})


@types_cli.command(
    name="count",
    no_args_is_help=True,
    short_help="Number of type sequences of dimension n.",
)
def run_command_types_count(n: arg_dimension) -> None:
    """Count the type sequences of dimension n without listing them."""

    print_args(n=n)

    with app.reporting_errors():
        count = count_types(n)

    app.emit({"count": count})


# Command: info ------------------------------------------------------------------------------------


class ChoiceReferenceTable(StrEnum):
    CATEGORIES = "categories"
    EXIT_CODES = "exit-codes"
    TYPES = "types"


@cli.command(
    name="info",
    no_args_is_help=True,
    short_help="Print reference tables.",
    rich_help_panel="Other",
)
def run_command_info(
    table: Annotated[
        ChoiceReferenceTable,
        Argument(
            help="Select reference table to print.",
            show_default=False,
        ),
    ],
) -> None:
    """Print reference tables."""

    match table:
        case ChoiceReferenceTable.CATEGORIES:
            console.print(TABLE_CATEGORIES)
        case ChoiceReferenceTable.EXIT_CODES:
            console.print(TABLE_EXIT_CODES)
        case ChoiceReferenceTable.TYPES:
            console.print(TABLE_TYPES)


# Command: init ------------------------------------------------------------------------------------


@cli.command(
    name="init",
    short_help="Create a config file.",
    rich_help_panel="Application",
)
def run_command_init(
    local: Annotated[
        bool,
        Option(
            "--local",
            help="Write the config file to the current directory.",
            show_default=False,
        ),
    ] = False,
    force: arg_force = False,
) -> None:
    """Create a config file in the user directory, or the current directory with --local."""

    destination = Path.cwd() if local else App.PATH_USER_DATA

    app.save_config_file(destination=destination, create_destination=not local, force=force)


# Command: config ----------------------------------------------------------------------------------


@cli.command(
    name="config",
    short_help="Print the resolved config.",
    rich_help_panel="Application",
)
def run_command_config() -> None:
    """Print the config resolved from the defaults and every override file, as TOML."""

    echo(tomli_w.dumps(CONFIG.dump()), nl=False)
