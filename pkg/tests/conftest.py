"""Common test fixtures for infotheory-epi tests."""

from __future__ import annotations

import numpy as np
import pytest

from infotheory.epi import Pmf, QuadratureConfig, new_pmf


@pytest.fixture
def coin() -> Pmf:
    """Fair coin on {0, 1}."""
    return new_pmf([(0, 0.5), (1, 0.5)])


@pytest.fixture
def point_mass() -> Pmf:
    """Singleton at 3.7."""
    return new_pmf([(3.7, 1.0)])


@pytest.fixture
def half_grid() -> Pmf:
    """Fair coin on {0, 0.5}."""
    return new_pmf([(0, 0.5), (0.5, 0.5)])


@pytest.fixture
def three_point() -> Pmf:
    """Equiprobable on {0, 1, 2}."""
    return new_pmf([(0, 1 / 3), (1, 1 / 3), (2, 1 / 3)])


@pytest.fixture
def fast_quadrature() -> QuadratureConfig:
    """Coarser self-convolution grid for many-case tests."""
    return QuadratureConfig(convolution_grid_points=2048)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for deterministic tests."""
    return np.random.default_rng(42)
