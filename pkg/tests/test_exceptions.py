"""Tests for the infotheory-epi exception hierarchy."""

from __future__ import annotations

import pytest

from infotheory.epi import (
    EpiError,
    InvalidDensityError,
    InvalidPmfError,
    OverlapError,
    PlacementError,
    PmfFormatError,
    PreconditionError,
    QuadratureError,
    ResolutionError,
    SigmaSearchError,
)


class TestHierarchy:
    """Every error derives from EpiError."""

    @pytest.mark.parametrize(
        "exc_type",
        [
            InvalidPmfError,
            PmfFormatError,
            InvalidDensityError,
            PreconditionError,
            OverlapError,
            PlacementError,
            QuadratureError,
            ResolutionError,
            SigmaSearchError,
        ],
    )
    def test_base_class(self, exc_type: type[Exception]) -> None:
        """Catching EpiError catches every library error."""
        assert issubclass(exc_type, EpiError)

    def test_input_errors_are_value_errors(self) -> None:
        """Bad-input errors can be caught as ValueError."""
        for exc_type in (
            InvalidPmfError,
            PmfFormatError,
            InvalidDensityError,
            OverlapError,
            PlacementError,
        ):
            assert issubclass(exc_type, ValueError)

    def test_numerical_errors_are_not_value_errors(self) -> None:
        """Quadrature and resolution failures are not input errors."""
        assert not issubclass(QuadratureError, ValueError)
        assert not issubclass(ResolutionError, ValueError)


class TestAttributes:
    """Keyword attributes carried by each error."""

    def test_invalid_pmf(self) -> None:
        """InvalidPmfError carries the offending mass."""
        exc = InvalidPmfError("bad mass", total_mass=1.1)
        assert exc.total_mass == 1.1
        assert str(exc) == "bad mass"

    def test_format_error(self) -> None:
        """PmfFormatError carries path and line."""
        exc = PmfFormatError("bad record", path="x.txt", line=3)
        assert (exc.path, exc.line) == ("x.txt", 3)
        assert exc.total_mass is None

    def test_overlap_limit_is_half_spacing(self) -> None:
        """OverlapError derives its limit from the spacing."""
        exc = OverlapError("overlap", half_width=0.6, spacing=1.0)
        assert exc.limit == 0.5
        assert exc.spacing == 1.0
        assert exc.half_width == 0.6

    def test_overlap_without_spacing(self) -> None:
        """No spacing means no limit."""
        assert OverlapError("overlap").limit is None

    def test_quadrature(self) -> None:
        """QuadratureError carries the failing piece."""
        exc = QuadratureError("no convergence", interval=(0.0, 1.0), abs_error=1e-3)
        assert exc.interval == (0.0, 1.0)
        assert exc.abs_error == 1e-3

    def test_sigma_search(self) -> None:
        """SigmaSearchError carries the step count and last F."""
        exc = SigmaSearchError("cap", steps=200, last_f=0.9)
        assert (exc.steps, exc.last_f) == (200, 0.9)

    def test_placement(self) -> None:
        """PlacementError carries the support size and gap."""
        exc = PlacementError("crowded", support_size=1000, min_gap=1e-3)
        assert (exc.support_size, exc.min_gap) == (1000, 1e-3)
