from __future__ import annotations

from pathlib import Path
from typing import Any

from pydantic import (
    AliasGenerator,
    BaseModel,
    ConfigDict,
    NonNegativeInt,
    ValidationError,
    conint,
)

from . import helpers
from .errors import ConfigReadError, ConfigValidationError
from .shared import TYPE_DIMENSION_MAX, App, Category


TypeDimension = conint(ge=0, le=TYPE_DIMENSION_MAX)


class BaseConfig(BaseModel):
    # Accept both `field-name` and `field_name` as valid keys.
    model_config = ConfigDict(
        alias_generator=AliasGenerator(
            validation_alias=helpers.snake_to_kebab,
            serialization_alias=helpers.snake_to_kebab,
        ),
        populate_by_name=True,
        extra="forbid",
    )


class Options(BaseConfig):
    category: Category


class Output(BaseConfig):
    indent: NonNegativeInt = 2
    compact: bool = False
    sort_keys: bool = False


class Limits(BaseConfig):
    max_type_dimension: TypeDimension  # pyright: ignore [reportInvalidTypeForm]


class Config(BaseConfig):
    options: Options
    output: Output
    limits: Limits


class ConfigManager:
    DEFAULT_LOCATION = App.PATH_DATA / App.NAME_CONFIG_FILE

    def __init__(self) -> None:
        self.__debug = False
        self.__inner: Config | None = None
        self.__sources: list[Path] = []

    @property
    def cfg(self) -> Config:
        if self.__inner is None:
            self.load()

        return self.__inner  # pyright: ignore [reportReturnType]

    @property
    def debug(self) -> bool:
        return self.__debug

    @debug.setter
    def debug(self, value: bool) -> None:
        self.__debug = value

    @property
    def sources(self) -> list[Path]:
        return list(self.__sources)

    def load(self, user: bool = False) -> None:
        filepaths = [self.DEFAULT_LOCATION]

        if user is True:
            filepaths.extend(self.get_config_file_override_paths())

        config: dict = {}

        for filepath in filepaths:
            data = read_serialized_data(filepath)
            config = helpers.merge_dicts(config, data)

            try:
                self.__inner = Config.model_validate(config)
            except ValidationError as error:
                raise ConfigValidationError(error, filepath) from error

        self.__sources = filepaths

    def get_config_file_override_paths(self) -> list[Path]:
        # Resolved per load: the user directory, then the working directory.
        locations = (
            App.PATH_USER_DATA / App.NAME_CONFIG_FILE,
            Path.cwd() / App.NAME_CONFIG_FILE,
        )

        return [location for location in locations if location.exists()]

    def dump(self) -> dict[str, Any]:
        return self.cfg.model_dump(mode="json", by_alias=True, exclude_none=True)


def read_serialized_data(path: Path) -> dict:
    try:
        return helpers.read_serialized_data(path)
    except Exception as error:
        raise ConfigReadError(error, path) from error


CONFIG = ConfigManager()
