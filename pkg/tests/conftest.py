"""Test configuration and fixtures."""

import pytest
from hypothesis import HealthCheck, settings

from atlas.repositories import get_repository
from atlas.services import (
    FigureService,
    HurwitzService,
    JordanService,
    LieService,
    ProjectionService,
    RootService,
    TitsService,
)

# Exact arithmetic is slow per example; keep property runs short and deadline-free
settings.register_profile(
    "atlas",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("atlas")


@pytest.fixture(scope="session")
def repository():
    """Shared transcription repository."""
    return get_repository()


@pytest.fixture(scope="session")
def root_service(repository):
    """Root service over the shared repository."""
    return RootService(repository)


@pytest.fixture(scope="session")
def projection_service(root_service, repository):
    """Projection service reusing the root service and its caches."""
    return ProjectionService(root_service, repository)


@pytest.fixture(scope="session")
def lie_service():
    """Lie service with the default seed."""
    return LieService()


@pytest.fixture(scope="session")
def hurwitz_service(lie_service):
    """Hurwitz service."""
    return HurwitzService(lie_service)


@pytest.fixture(scope="session")
def jordan_service(lie_service):
    """Jordan service."""
    return JordanService(lie_service)


@pytest.fixture(scope="session")
def tits_service(lie_service, hurwitz_service, jordan_service, projection_service):
    """Tits service wired to the shared services."""
    return TitsService(lie_service, hurwitz_service, jordan_service, projection_service)


@pytest.fixture(scope="session")
def figure_service(projection_service):
    """Figure service."""
    return FigureService(projection_service)
