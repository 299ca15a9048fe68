"""Run configuration: TOML file, CLI flags and defaults."""
from __future__ import annotations

import os
import sys
from io import BytesIO
from pathlib import Path
from typing import Any, BinaryIO

from loguru import logger
from pydantic import BaseModel, Field, ValidationError, model_validator

from civd.influence import InfluenceModel, ModelKind, make_model
from civd.utils.exceptions import InvalidConfigurationError, NoSolutionError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


def _threads_from_env() -> int:
    return os.environ.get("CIVD_THREADS", 1)  # type: ignore[return-value]


class RunConfig(BaseModel):
    """Parameters of one build/query/validate run."""

    model: ModelKind = ModelKind.DENSITY
    t: float = Field(default=2.0, ge=1)
    dim: int | None = Field(default=None, ge=1)
    epsilon: float = Field(default=0.2, gt=0, lt=1)
    beta: float | None = Field(default=None, gt=0, lt=0.5)
    locality_constant: float = Field(default=1.0, gt=0)
    seed: int = 0
    input: Path | None = None
    output: Path | None = None
    render: Path | None = None
    samples: int = Field(default=100, ge=1)
    threads: int = Field(default_factory=_threads_from_env, ge=1, validate_default=True)
    fast_find: bool = True

    @model_validator(mode="after")
    def _check_epsilon(self) -> RunConfig:
        if self.dim is not None:
            try:
                self.make_model(self.dim)
            except (NoSolutionError, InvalidConfigurationError) as error:
                raise ValueError(str(error)) from error
        return self

    def make_model(self, dim: int) -> InfluenceModel:
        if self.dim is not None and self.dim != dim:
            msg = f"Configured for {self.dim}-D points but the input is {dim}-D"
            raise InvalidConfigurationError(msg)
        return make_model(self.model, dim, self.epsilon, self.t, self.beta, self.locality_constant)


def parse_toml(stream: BinaryIO) -> dict:
    """Read a TOML document into a dict."""
    try:
        return tomllib.load(stream)
    except tomllib.TOMLDecodeError as parser_error:
        logger.exception(parser_error)
        msg = "Invalid syntax in configuration!"
        raise InvalidConfigurationError(msg) from parser_error


def parse_config(file_path: Path | BytesIO) -> dict:
    """The `[civd]` table of a TOML run file, empty if the file has none."""
    if isinstance(file_path, BytesIO):
        document = parse_toml(file_path)
    elif isinstance(file_path, Path):
        if not file_path.is_file():
            msg = f"Configuration file {file_path} does not exist"
            raise InvalidConfigurationError(msg)
        with file_path.open("rb") as stream:
            document = parse_toml(stream)
    else:
        raise InvalidConfigurationError("Invalid configuration type.")
    table = document.get("civd", {})
    if not isinstance(table, dict):
        msg = f"[civd] must be a table, got {type(table).__name__}"
        raise InvalidConfigurationError(msg)
    return table


def load_run_config(config_file: Path | BytesIO | None = None, **overrides: Any) -> RunConfig:
    """Merge the `[civd]` table of config_file with the overrides that are not None."""
    settings: dict = {}
    if config_file is not None:
        settings = parse_config(config_file)
    settings.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return RunConfig.model_validate(settings)
    except ValidationError as error:
        logger.exception(error)
        msg = f"Invalid run configuration: {error.errors()[0]['msg']}"
        raise InvalidConfigurationError(msg) from error
