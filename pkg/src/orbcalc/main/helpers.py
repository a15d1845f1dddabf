from __future__ import annotations

import json
import shutil
import sys
from pathlib import Path

import tomllib
import yaml

from .shared import App, ConfigFormat, console
from .ui import INDENT


def copy_file(
    source: Path,
    destination: Path,
    create_destination: bool = False,
    force: bool = False,
) -> bool:
    """Copies `source` into the `destination` directory and returns whether it was written."""

    target = destination.resolve() / source.name
    prefix = INDENT * 2

    if create_destination and not target.parent.exists():
        target.parent.mkdir(parents=True)
        console.print(f"{prefix}Created directory [yellow]{format_path(target.parent)}[/yellow].")

    if target.exists() and not force:
        console.print(
            f"{prefix}[red]Warning:[/red] [yellow]{target.name}[/yellow] already exists. "
            "Pass --force to overwrite it."
        )
        return False

    shutil.copy(source, target)
    console.print(f"{prefix}Created [yellow]{target.name}[/yellow].")

    return True


def read_serialized_data(path: Path) -> dict:
    match path.suffix:
        case ConfigFormat.JSON:
            with path.open(encoding="utf-8") as f:
                return json.load(f)
        case ConfigFormat.TOML:
            with path.open(mode="rb") as f:
                return tomllib.load(f)
        case ConfigFormat.YAML | ConfigFormat.YML:
            with path.open(encoding="utf-8") as f:
                return yaml.safe_load(f) or {}

    raise ValueError(f"Unsupported serialized data format: '{path.name}'.")


def read_serialized_stream(name: str) -> dict:
    """Reads a JSON document from a path, or from stdin when `name` is '-'."""

    if name == App.STDIN:
        data = json.load(sys.stdin)
    else:
        data = read_serialized_data(Path(name))

    if not isinstance(data, dict):
        raise TypeError(f"Expected a mapping at the document root, got {type(data).__name__}.")

    return data


def merge_dicts(base: dict, overrides: dict) -> dict:
    def recursive_merge(base: dict, override: dict) -> dict:
        for key, value in override.items():
            if isinstance(value, dict) and isinstance(base.get(key), dict):
                base[key] = recursive_merge(base[key], value)
            else:
                base[key] = value

        return base

    return recursive_merge(base.copy(), overrides)


def format_path(path: Path) -> str:
    """Shortens a path for display: relative to the working directory, or `~` under home."""

    cwd = Path.cwd()

    if path == cwd:
        return "current directory"

    if path.is_relative_to(cwd):
        return f"./{path.relative_to(cwd)}"

    if path.is_relative_to(Path.home()):
        return f"~/{path.relative_to(Path.home())}"

    return str(path)


def snake_to_kebab(string: str) -> str:
    return string.replace("_", "-")
