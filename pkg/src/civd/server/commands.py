"""Operations behind the CLI subcommands."""
from __future__ import annotations

from pathlib import Path

from loguru import logger
from pydantic import BaseModel

from civd.civd import CIVD, QueryResult
from civd.geometry import Point
from civd.oracle import OracleReport, ValidationSummary, summarize, validate_civd
from civd.server.artifact import load_artifact, save_artifact
from civd.server.configuration import RunConfig
from civd.server.points_io import read_points
from civd.server.svg import write_svg
from civd.utils.exceptions import InvalidConfigurationError


class ValidationReport(BaseModel):
    summary: ValidationSummary
    reports: list[OracleReport]


def cmd_build(config: RunConfig) -> CIVD:
    """Read the input points, build the diagram and write the artifact (and the SVG when asked)."""
    if config.input is None:
        raise InvalidConfigurationError("No input point file given")
    points = read_points(config.input, config.dim)
    model = config.make_model(points.shape[1])
    civd = CIVD.build(points, model, fast_find=config.fast_find)
    if config.output is not None:
        save_artifact(civd, config.output)
    if config.render is not None:
        write_svg(civd, config.render)
    return civd


def cmd_query(artifact: Path, queries: list[Point]) -> list[QueryResult]:
    civd = load_artifact(artifact)
    return [civd.query(query) for query in queries]


def cmd_validate(artifact: Path, samples: int, seed: int, threads: int, report: Path | None = None) -> ValidationReport:
    civd = load_artifact(artifact)
    reports = validate_civd(civd, samples, seed, threads)
    result = ValidationReport(summary=summarize(reports, civd.model.epsilon), reports=reports)
    if report is not None:
        report.write_text(result.model_dump_json(by_alias=True, indent=2))
        logger.info(f"Validation report written to {report}")
    return result


def cmd_render_svg(artifact: Path, output: Path) -> None:
    write_svg(load_artifact(artifact), output)
    logger.info(f"SVG written to {output}")
