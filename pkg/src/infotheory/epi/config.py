"""Configuration types for infotheory-epi.

Provides QuadratureConfig for numerical integration, VerifyConfig for
assertion tolerances and SweepConfig for the sigma search schedule.
"""

from __future__ import annotations

import logging
import math
import warnings

from pydantic import BaseModel, ConfigDict, Field, model_validator

logger = logging.getLogger(__name__)

# 1 / (2 pi e): the entropy power of a zero-entropy variable.
INV_2PI_E = 1.0 / (2.0 * math.pi * math.e)

# Drift of the supplied mass that is silently renormalized.
NORMALIZATION_TOL = 1e-9

# Mass invariant of a constructed Pmf.
MASS_TOL = 1e-12

DEFAULT_MERGE_EPS = 1e-9

# Largest relative renormalization a grid self-convolution may need.
MAX_CONVOLUTION_CORRECTION = 1e-6


class QuadratureConfig(BaseModel):
    """Numerical integration parameters.

    Attributes:
        abs_tol: Absolute error target for each adaptive integral.
        max_subdivisions: Subinterval cap handed to the adaptive integrator.
        convolution_grid_points: Uniform grid size used to self-convolve a
            density.

    Example:
        >>> config = QuadratureConfig()
        >>> config.abs_tol
        1e-10
        >>> coarse = QuadratureConfig(convolution_grid_points=2048)
    """

    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(
        default=1e-10,
        gt=0.0,
        description="Absolute error target for adaptive quadrature",
    )
    max_subdivisions: int = Field(
        default=2**20,
        gt=0,
        description="Maximum number of adaptive subintervals",
    )
    convolution_grid_points: int = Field(
        default=8192,
        ge=16,
        description="Uniform grid points for density self-convolution",
    )

    @model_validator(mode="after")
    def warn_on_coarse_grid(self) -> QuadratureConfig:
        """Warn when the convolution grid is likely under-resolved."""
        if self.convolution_grid_points < 1024:
            warnings.warn(
                f"convolution_grid_points ({self.convolution_grid_points}) is below 1024; "
                "self-convolution may fail its mass check",
                UserWarning,
                stacklevel=2,
            )
            logger.warning(
                "Config warning: convolution_grid_points = %d is below 1024",
                self.convolution_grid_points,
            )
        return self


class VerifyConfig(BaseModel):
    """Tolerances for inequality checks.

    Pure pmf checks involve only closed-form arithmetic and use
    ``pmf_tol``; checks where quadrature enters use ``quadrature_tol``.

    Attributes:
        merge_eps: Atoms closer than this are merged (absolute units).
        pmf_tol: Assertion tolerance for pure pmf checks.
        quadrature_tol: Assertion tolerance when integrals are involved.
        normalization_tol: Largest mass drift that is renormalized.

    Example:
        >>> config = VerifyConfig()
        >>> config.pmf_tol
        1e-09
    """

    model_config = ConfigDict(frozen=True)

    merge_eps: float = Field(
        default=DEFAULT_MERGE_EPS,
        ge=0.0,
        description="Atom merge distance in value units",
    )
    pmf_tol: float = Field(
        default=1e-9,
        gt=0.0,
        description="Assertion tolerance for closed-form pmf checks",
    )
    quadrature_tol: float = Field(
        default=1e-6,
        gt=0.0,
        description="Assertion tolerance where quadrature enters",
    )
    normalization_tol: float = Field(
        default=NORMALIZATION_TOL,
        gt=0.0,
        le=1e-3,
        description="Mass drift that is silently renormalized",
    )

    @model_validator(mode="after")
    def validate_tolerance_order(self) -> VerifyConfig:
        """Quadrature checks cannot be stricter than closed-form ones."""
        if self.pmf_tol > self.quadrature_tol:
            raise ValueError(
                f"pmf_tol ({self.pmf_tol}) cannot exceed quadrature_tol ({self.quadrature_tol})"
            )
        return self


class SweepConfig(BaseModel):
    """Geometric schedule for the sigma search.

    Attributes:
        ratio: Factor applied to sigma at each step.
        max_steps: Step cap before the search is declared failed.
    """

    model_config = ConfigDict(frozen=True)

    ratio: float = Field(
        default=0.8,
        gt=0.0,
        lt=1.0,
        description="Geometric descent ratio for sigma",
    )
    max_steps: int = Field(
        default=200,
        gt=0,
        description="Maximum sweep rows",
    )
