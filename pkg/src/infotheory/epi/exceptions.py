"""Exception types for infotheory-epi.

Defines a hierarchy of exceptions for invalid distributions, broken
preconditions and numerical failures.
"""

from __future__ import annotations


class EpiError(Exception):
    """Base exception for all entropy-power errors."""

    pass


class InvalidPmfError(EpiError, ValueError):
    """Raised when atoms do not form a valid probability mass function.

    Attributes:
        total_mass: Sum of the supplied probabilities, when relevant.
    """

    def __init__(
        self,
        message: str,
        *,
        total_mass: float | None = None,
    ) -> None:
        super().__init__(message)
        self.total_mass = total_mass


class PmfFormatError(InvalidPmfError):
    """Raised when a pmf file cannot be parsed.

    Attributes:
        path: File being read.
        line: 1-based line number of the offending record (text format).
    """

    def __init__(
        self,
        message: str,
        *,
        path: str | None = None,
        line: int | None = None,
    ) -> None:
        super().__init__(message)
        self.path = path
        self.line = line


class InvalidDensityError(EpiError, ValueError):
    """Raised when a density or interval is malformed."""

    pass


class PreconditionError(EpiError, ValueError):
    """Raised when an operation's precondition is violated.

    Attributes:
        half_width: Kernel half-width involved in the check.
        limit: The bound it was compared against.
    """

    def __init__(
        self,
        message: str,
        *,
        half_width: float | None = None,
        limit: float | None = None,
    ) -> None:
        super().__init__(message)
        self.half_width = half_width
        self.limit = limit


class OverlapError(PreconditionError):
    """Raised when mixture components would overlap.

    The kernel half-width must be strictly below half the minimum
    spacing of the base pmf.

    Attributes:
        spacing: Minimum spacing of the base pmf.
    """

    def __init__(
        self,
        message: str,
        *,
        half_width: float | None = None,
        spacing: float | None = None,
    ) -> None:
        limit = None if spacing is None else spacing / 2.0
        super().__init__(message, half_width=half_width, limit=limit)
        self.spacing = spacing


class PlacementError(EpiError, ValueError):
    """Raised when atoms cannot be placed with the required gap.

    Attributes:
        support_size: Number of atoms requested.
        min_gap: Smallest allowed gap between atoms.
    """

    def __init__(
        self,
        message: str,
        *,
        support_size: int | None = None,
        min_gap: float | None = None,
    ) -> None:
        super().__init__(message)
        self.support_size = support_size
        self.min_gap = min_gap


class QuadratureError(EpiError):
    """Raised when adaptive quadrature fails to converge.

    Attributes:
        interval: The (lo, hi) piece that failed.
        abs_error: Error estimate reported by the integrator.
    """

    def __init__(
        self,
        message: str,
        *,
        interval: tuple[float, float] | None = None,
        abs_error: float | None = None,
    ) -> None:
        super().__init__(message)
        self.interval = interval
        self.abs_error = abs_error


class ResolutionError(EpiError):
    """Raised when a grid self-convolution loses too much mass.

    Attributes:
        correction: Relative renormalization correction that was needed.
    """

    def __init__(
        self,
        message: str,
        *,
        correction: float | None = None,
    ) -> None:
        super().__init__(message)
        self.correction = correction


class SigmaSearchError(EpiError):
    """Raised when the sigma sweep hits its step cap.

    Attributes:
        steps: Number of sweep rows evaluated.
        last_f: F value at the last swept sigma.
    """

    def __init__(
        self,
        message: str,
        *,
        steps: int | None = None,
        last_f: float | None = None,
    ) -> None:
        super().__init__(message)
        self.steps = steps
        self.last_f = last_f
