"""Reading point sets from CSV and JSON files."""
from __future__ import annotations

from pathlib import Path

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field, ValidationError, model_validator

from civd.geometry import PointArray, as_points, ensure_distinct
from civd.utils.exceptions import InputFileError, InvalidPointError


class PointFile(BaseModel):
    dim: int = Field(ge=1)
    points: list[list[float]]

    @model_validator(mode="after")
    def _rows_match_dim(self) -> PointFile:
        for index, row in enumerate(self.points):
            if len(row) != self.dim:
                msg = f"Point {index} has {len(row)} coordinates, expected {self.dim}"
                raise ValueError(msg)
        return self


def read_points(path: Path, dim: int | None = None) -> PointArray:
    """Points from a JSON document (`{"dim": d, "points": [...]}`) or a CSV file with one point per line."""
    try:
        if path.suffix.lower() == ".json":
            document = PointFile.model_validate_json(path.read_bytes())
            points = np.array(document.points, dtype=float).reshape(-1, document.dim)
        else:
            points = np.loadtxt(path, delimiter=",", ndmin=2, comments="#", dtype=float)
    except (OSError, ValueError, ValidationError) as error:
        logger.exception(error)
        msg = f"Cannot read points from {path}"
        raise InputFileError(msg) from error
    try:
        points = as_points(points, dim)
    except InvalidPointError as error:
        msg = f"{path}: {error}"
        raise InvalidPointError(msg) from error
    ensure_distinct(points)
    logger.debug(f"Read {len(points)} {points.shape[1]}-D points from {path}")
    return points
