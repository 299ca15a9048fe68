import numpy as np
import pytest
from _pytest.logging import LogCaptureFixture
from loguru import logger


@pytest.fixture
def caplog(caplog: LogCaptureFixture):
    handler_id = logger.add(caplog.handler, format="{message}")
    yield caplog
    logger.remove(handler_id)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def square_points():
    """Corners of a unit square, shifted off the axes."""
    return np.array([[1.0, 1.0], [2.0, 1.0], [1.0, 2.0], [2.0, 2.0]])


@pytest.fixture
def line_points():
    """Points on a line with one cluster and two stragglers."""
    return np.array([[0.0], [0.3], [0.5], [4.0], [9.0]])
