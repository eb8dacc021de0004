"""Finite discrete distributions on the real line.

Provides the Pmf type together with convolution, minimum spacing,
discrete entropy and discrete entropy power.

Definitions (natural logarithms throughout):
    Discrete entropy:       H(X) = -sum_i p_i ln p_i
    Discrete entropy power: N(X) = exp(2 H(X)) / (2 pi e)
    Minimum spacing:        alpha = min_{i != j} |x_i - x_j|   (+inf for one atom)

Where:
    p_i = P(X = x_i) for the atoms x_1 < ... < x_k of X
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import entr

from infotheory.epi.config import DEFAULT_MERGE_EPS, INV_2PI_E, MASS_TOL, NORMALIZATION_TOL
from infotheory.epi.exceptions import InvalidPmfError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Pmf:
    """Probability mass function with finitely many atoms.

    Atoms are stored as two read-only float arrays sorted by value.
    Construct through :func:`new_pmf` (which sorts, merges and
    renormalizes); the constructor only validates.

    Attributes:
        values: Atom locations, strictly increasing.
        probs: Atom probabilities, strictly positive, summing to 1.

    Example:
        >>> coin = new_pmf([(1, 0.5), (0, 0.5)])
        >>> coin.atoms
        ((0.0, 0.5), (1.0, 0.5))
        >>> coin.is_singleton
        False
    """

    values: NDArray[np.float64] = field(repr=False)
    probs: NDArray[np.float64] = field(repr=False)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        probs = np.array(self.probs, dtype=np.float64)
        if values.ndim != 1 or probs.ndim != 1 or values.shape != probs.shape:
            raise InvalidPmfError("values and probs must be 1-D arrays of equal length")
        if values.size == 0:
            raise InvalidPmfError("a pmf needs at least one atom")
        if not (np.all(np.isfinite(values)) and np.all(np.isfinite(probs))):
            raise InvalidPmfError("atom values and probabilities must be finite")
        if np.any(probs <= 0.0):
            raise InvalidPmfError("every atom probability must be strictly positive")
        if values.size > 1 and not np.all(np.diff(values) > 0.0):
            raise InvalidPmfError("atom values must be strictly increasing")
        total = math.fsum(np.sort(probs))
        if abs(total - 1.0) > MASS_TOL:
            raise InvalidPmfError(
                f"probabilities sum to {total!r}, not 1 within {MASS_TOL}",
                total_mass=total,
            )
        values.flags.writeable = False
        probs.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "probs", probs)

    def __repr__(self) -> str:
        return f"Pmf(atoms={self.atoms!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pmf):
            return NotImplemented
        return bool(
            np.array_equal(self.values, other.values) and np.array_equal(self.probs, other.probs)
        )

    def __hash__(self) -> int:
        return hash((self.values.tobytes(), self.probs.tobytes()))

    @property
    def atoms(self) -> tuple[tuple[float, float], ...]:
        """(value, probability) pairs in increasing value order."""
        return tuple(zip(self.values.tolist(), self.probs.tolist(), strict=True))

    @property
    def size(self) -> int:
        """Number of atoms."""
        return int(self.values.size)

    @property
    def is_singleton(self) -> bool:
        """True when all mass sits on one atom."""
        return self.size == 1

    @classmethod
    def from_arrays(
        cls,
        values: ArrayLike,
        probs: ArrayLike,
        merge_eps: float = DEFAULT_MERGE_EPS,
        *,
        normalization_tol: float = NORMALIZATION_TOL,
    ) -> Pmf:
        """Build a pmf from parallel arrays, sorting and merging as needed.

        Args:
            values: Atom locations, any order.
            probs: Nonnegative probabilities, same length as values.
            merge_eps: Atoms within this distance are merged.
            normalization_tol: Largest mass drift that is renormalized.

        Returns:
            A validated Pmf.

        Raises:
            InvalidPmfError: On empty, non-finite, negative or unnormalized input.
        """
        return _assemble(
            np.asarray(values, dtype=np.float64).ravel(),
            np.asarray(probs, dtype=np.float64).ravel(),
            merge_eps,
            normalization_tol,
        )


@dataclass(frozen=True)
class Spacing:
    """Minimum gap between the atoms of a pmf.

    Attributes:
        alpha: Smallest pairwise distance, or +inf for a singleton.
    """

    alpha: float

    def __post_init__(self) -> None:
        if not self.alpha > 0.0:
            raise ValueError(f"spacing must be positive, got {self.alpha}")

    def __float__(self) -> float:
        return self.alpha

    @property
    def is_infinite(self) -> bool:
        """True for the singleton (empty-minimum) case."""
        return math.isinf(self.alpha)


@dataclass(frozen=True)
class SpacingCheck:
    """Outcome of comparing the spacing of a sum with its summands.

    Attributes:
        alpha_x: Minimum spacing of X.
        alpha_y: Minimum spacing of Y.
        alpha_z: Minimum spacing of X + Y.
        holds: Whether alpha_z <= min(alpha_x, alpha_y).
    """

    alpha_x: float
    alpha_y: float
    alpha_z: float
    holds: bool


def new_pmf(
    pairs: Iterable[tuple[float, float]],
    merge_eps: float = DEFAULT_MERGE_EPS,
    *,
    normalization_tol: float = NORMALIZATION_TOL,
) -> Pmf:
    """Build a pmf from (value, probability) pairs.

    Atoms are sorted by value, atoms whose values differ by at most
    ``merge_eps`` are merged into their probability-weighted mean,
    zero-probability atoms are dropped, and a total mass within
    ``normalization_tol`` of one is renormalized.

    Args:
        pairs: (value, probability) pairs, any order.
        merge_eps: Merge distance in value units (>= 0).
        normalization_tol: Largest mass drift that is renormalized
            (default 1e-9).

    Returns:
        A validated Pmf.

    Raises:
        InvalidPmfError: On empty input, negative probability, non-finite
            entries, or mass deviating from 1 by more than normalization_tol.

    Example:
        >>> new_pmf([(0, 0.5), (1e-15, 0.5)], merge_eps=1e-12).atoms
        ((5e-16, 1.0),)
    """
    rows = [(float(v), float(p)) for v, p in pairs]
    if not rows:
        raise InvalidPmfError("a pmf needs at least one atom")
    values, probs = zip(*rows, strict=True)
    return _assemble(np.array(values), np.array(probs), merge_eps, normalization_tol)


def _assemble(
    values: NDArray[np.float64],
    probs: NDArray[np.float64],
    merge_eps: float,
    normalization_tol: float = NORMALIZATION_TOL,
) -> Pmf:
    if values.shape != probs.shape:
        raise InvalidPmfError("values and probs must have equal length")
    if values.size == 0:
        raise InvalidPmfError("a pmf needs at least one atom")
    if merge_eps < 0.0:
        raise InvalidPmfError(f"merge_eps must be >= 0, got {merge_eps}")
    if not (np.all(np.isfinite(values)) and np.all(np.isfinite(probs))):
        raise InvalidPmfError("atom values and probabilities must be finite")
    if np.any(probs < 0.0):
        raise InvalidPmfError("probabilities must be nonnegative")

    keep = probs > 0.0
    values, probs = values[keep], probs[keep]
    if values.size == 0:
        raise InvalidPmfError("all atoms have zero probability", total_mass=0.0)

    order = np.argsort(values, kind="stable")
    values, probs = values[order], probs[order]

    if values.size > 1:
        # Chain-merge: a new group starts wherever the gap exceeds merge_eps.
        starts = np.flatnonzero(np.concatenate(([True], np.diff(values) > merge_eps)))
        if starts.size < values.size:
            values, probs = _merge_groups(values, probs, starts)

    total = math.fsum(np.sort(probs))
    drift = abs(total - 1.0)
    if drift > normalization_tol:
        raise InvalidPmfError(
            f"probabilities sum to {total!r}; deviation exceeds {normalization_tol}",
            total_mass=total,
        )
    if drift > 0.0:
        if drift > MASS_TOL:
            logger.debug("Renormalizing pmf with mass drift %.3e", drift)
        probs = probs / total
    return Pmf(values=values, probs=probs)


def _merge_groups(
    values: NDArray[np.float64],
    probs: NDArray[np.float64],
    starts: NDArray[np.intp],
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    bounds = np.append(starts, values.size)
    merged_values = np.empty(starts.size)
    merged_probs = np.empty(starts.size)
    for i, (lo, hi) in enumerate(zip(bounds[:-1], bounds[1:], strict=True)):
        group_p = probs[lo:hi]
        mass = math.fsum(group_p)
        merged_probs[i] = mass
        merged_values[i] = (
            values[lo] if hi - lo == 1 else math.fsum(values[lo:hi] * group_p) / mass
        )
    logger.debug("Merged %d atoms into %d", values.size, starts.size)
    return merged_values, merged_probs


def discrete_entropy(p: Pmf) -> float:
    """Discrete entropy H(p) = -sum p_i ln p_i in nats.

    Terms are summed in ascending magnitude with exact float summation
    so that near-degenerate pmfs keep their tiny entropies.

    Args:
        p: A valid pmf.

    Returns:
        Entropy in [0, ln(p.size)].

    Example:
        >>> discrete_entropy(new_pmf([(0, 0.5), (1, 0.5)]))  # ln 2
        0.6931471805599453
    """
    if p.is_singleton:
        return 0.0
    terms = np.sort(entr(p.probs))
    h = math.fsum(terms)
    return min(max(h, 0.0), math.log(p.size))


def discrete_entropy_power(p: Pmf) -> float:
    """Discrete entropy power N(p) = exp(2 H(p)) / (2 pi e).

    Args:
        p: A valid pmf.

    Returns:
        Entropy power, at least 1/(2 pi e) with equality for singletons.
    """
    return INV_2PI_E * math.exp(2.0 * discrete_entropy(p))


def min_spacing(p: Pmf) -> Spacing:
    """Smallest gap between distinct atom values.

    Args:
        p: A valid pmf.

    Returns:
        Spacing with alpha = +inf when p has a single atom.
    """
    if p.is_singleton:
        return Spacing(alpha=math.inf)
    return Spacing(alpha=float(np.min(np.diff(p.values))))


def convolve(
    x: Pmf,
    y: Pmf,
    merge_eps: float = DEFAULT_MERGE_EPS,
    *,
    normalization_tol: float = NORMALIZATION_TOL,
) -> Pmf:
    """Distribution of X + Y for independent X and Y.

    Every pairwise sum x_i + y_j carries mass p_i q_j; sums that collide
    within ``merge_eps`` are merged.

    Args:
        x: Distribution of X.
        y: Distribution of Y.
        merge_eps: Merge distance for coincident sums.
        normalization_tol: Largest mass drift of the product masses that is
            renormalized.

    Returns:
        Pmf of the sum with at most x.size * y.size atoms.

    Example:
        >>> coin = new_pmf([(0, 0.5), (1, 0.5)])
        >>> convolve(coin, coin).atoms
        ((0.0, 0.25), (1.0, 0.5), (2.0, 0.25))
    """
    sums = np.add.outer(x.values, y.values).ravel()
    masses = np.multiply.outer(x.probs, y.probs).ravel()
    return _assemble(sums, masses, merge_eps, normalization_tol)


def spacing_bound_holds(
    x: Pmf,
    y: Pmf,
    merge_eps: float = DEFAULT_MERGE_EPS,
) -> SpacingCheck:
    """Check that the sum X + Y is no more widely spaced than X or Y.

    Args:
        x: Distribution of X.
        y: Distribution of Y.
        merge_eps: Merge distance used to build X + Y.

    Returns:
        SpacingCheck with the three spacings (+inf aware) and the verdict,
        compared up to merge_eps.
    """
    alpha_x = min_spacing(x).alpha
    alpha_y = min_spacing(y).alpha
    alpha_z = min_spacing(convolve(x, y, merge_eps)).alpha
    # Rounded sums and merged atoms may move a gap by up to merge_eps.
    return SpacingCheck(
        alpha_x=alpha_x,
        alpha_y=alpha_y,
        alpha_z=alpha_z,
        holds=alpha_z <= min(alpha_x, alpha_y) + merge_eps,
    )


def shift(p: Pmf, c: float) -> Pmf:
    """Translate every atom of p by c."""
    return Pmf(values=p.values + c, probs=p.probs)


def effective_support(p: Pmf, mass_tol: float) -> tuple[float, ...]:
    """Smallest set of atoms covering at least 1 - mass_tol of the mass.

    Atoms are taken in decreasing probability order. This is one reading
    of "effective support"; the equality discussion of the discrete
    inequality does not pin the notion down.

    Args:
        p: A valid pmf.
        mass_tol: Mass allowed outside the returned atoms, in [0, 1).

    Returns:
        Atom values in increasing order.
    """
    if not 0.0 <= mass_tol < 1.0:
        raise ValueError(f"mass_tol must be in [0, 1), got {mass_tol}")
    order = np.argsort(-p.probs, kind="stable")
    covered = np.cumsum(p.probs[order])
    count = int(np.searchsorted(covered, 1.0 - mass_tol - MASS_TOL)) + 1
    return tuple(sorted(p.values[order[: min(count, p.size)]].tolist()))


def concentrated_pmf(support_size: int, delta: float) -> Pmf:
    """Mass 1 - delta at 0 and delta spread evenly over 1, ..., support_size - 1.

    Args:
        support_size: Number of atoms (>= 2).
        delta: Mass off the main atom, in (0, 1).

    Returns:
        A near-degenerate pmf on the integer grid.

    Example:
        >>> concentrated_pmf(3, 0.01).atoms
        ((0.0, 0.99), (1.0, 0.005), (2.0, 0.005))
    """
    if support_size < 2:
        raise InvalidPmfError(f"a concentrated pmf needs at least 2 atoms, got {support_size}")
    if not 0.0 < delta < 1.0:
        raise InvalidPmfError(f"delta must be in (0, 1), got {delta}")
    tail = delta / (support_size - 1)
    probs = np.full(support_size, tail)
    probs[0] = 1.0 - delta
    return _assemble(np.arange(support_size, dtype=np.float64), probs, 0.0)
