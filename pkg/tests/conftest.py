"""
Shared fixtures for the CrossTalk test suite
"""
import logging

import numpy as np
import pytest

from src.models import SystemParams
from src.services import AnalyticSolver, BlochSolver, SpectraService, TimeDomainSolver
from src.utils.logging_config import LOGGER_NAME


@pytest.fixture
def fig2_params() -> SystemParams:
    """Default parameter set: B=2, B'=3B, delta = Delta = B' - B, G=0.5, gamma1=4, gamma2=2"""
    return SystemParams(B=2.0, B_prime=6.0, Delta=4.0, delta=4.0, G=0.5, gamma1=4.0, gamma2=2.0)


@pytest.fixture
def analytic() -> AnalyticSolver:
    return AnalyticSolver()


@pytest.fixture
def bloch() -> BlochSolver:
    return BlochSolver()


@pytest.fixture
def timedomain() -> TimeDomainSolver:
    return TimeDomainSolver()


@pytest.fixture
def spectra() -> SpectraService:
    return SpectraService()


@pytest.fixture
def draw_params():
    """Factory for random parameter sets within the tested ranges"""

    def draw(rng: np.random.Generator, min_beat: float = 0.0) -> SystemParams:
        while True:
            params = SystemParams(
                B=rng.uniform(0.5, 10.0),
                B_prime=rng.uniform(0.5, 10.0),
                Delta=rng.uniform(-15.0, 15.0),
                delta=rng.uniform(-15.0, 15.0),
                G=rng.uniform(0.1, 5.0),
                gamma1=rng.uniform(0.5, 6.0),
                gamma2=rng.uniform(0.5, 6.0),
            )
            if abs(params.delta - params.Delta + 2.0 * params.B_prime) >= min_beat:
                return params

    return draw


@pytest.fixture(autouse=True)
def reset_logging():
    """Drop handlers bound to a previous test's captured stderr"""
    yield
    logger = logging.getLogger(LOGGER_NAME)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
