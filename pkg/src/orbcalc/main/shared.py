from __future__ import annotations

from enum import IntEnum, StrEnum
from importlib import metadata, resources
from pathlib import Path

from rich.console import Console


# Diagnostics go to stderr. stdout only ever carries result documents.
console = Console(stderr=True)


def _version(name: str) -> str:
    try:
        return metadata.version(name)
    except metadata.PackageNotFoundError:
        return "0.0.0"


class App:
    NAME = "orbcalc"
    NAME_FULL = "OrbCalc"

    VERSION = _version(NAME)

    PATH_ROOT = Path(resources.files(NAME))  # pyright: ignore [reportArgumentType]
    PATH_DATA = PATH_ROOT / "data"
    PATH_USER_DATA = Path.home() / f".{NAME}"

    NAME_CONFIG_FILE = "orbcalc.toml"

    STDIN = "-"


# `enumerate_types` is exponential in the dimension: c(14) = F(30) = 832040.
TYPE_DIMENSION_MAX = 14

# Larger values have results past the 4300-digit limit of int-to-str conversion.
TYPE_COUNT_DIMENSION_MAX = 10_000
SYLVESTER_DIMENSION_MAX = 12


class ExitCode(IntEnum):
    OK = 0
    CHECKED_FALSE = 1
    INPUT_ERROR = 2


class ConfigFormat(StrEnum):
    TOML = ".toml"
    YAML = ".yaml"
    YML = ".yml"
    JSON = ".json"


class Category(StrEnum):
    Q = "q"
    Z = "z"
    DIV = "div"

    @property
    def requires_integral(self) -> bool:
        """Z and Div are only defined on entière orbifolds."""
        return self is not Category.Q

    @property
    def ordering(self) -> str:
        match self:
            case Category.DIV:
                return "divides"
            case _:
                return "leq"

    @property
    def description(self) -> str:
        match self:
            case Category.Q:
                return "t·m_Y(E) ≥ m_X(D), rational multiplicities."
            case Category.Z:
                return "t·m_Y(E) ≥ m_X(D), integral-or-inf multiplicities."
            case Category.DIV:
                return "m_X(D) divides t·m_Y(E), integral-or-inf multiplicities."
            case _:
                raise ValueError(f"Missing description for: {self}")
