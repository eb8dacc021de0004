"""Perturbing discrete variables by small bounded noise.

A discrete M plus independent noise T with |T| < alpha_m / 2 has a density
made of non-overlapping shifted copies of the noise density, so

    h(M + T) = H(M) + h(T).

This module builds that mixture and checks the identity numerically, for
one variable and for the pair X + W1, Y + W2, X + Y + W1 + W2.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from infotheory.epi.config import DEFAULT_MERGE_EPS, QuadratureConfig
from infotheory.epi.density import (
    BoundedDensity,
    Interval,
    differential_entropy,
    self_convolve,
)
from infotheory.epi.exceptions import OverlapError, PreconditionError
from infotheory.epi.pmf import Pmf, convolve, discrete_entropy, min_spacing

logger = logging.getLogger(__name__)

# Slack added to the summed quadrature error estimates in the identity check.
LEMMA1_ABS_SLACK = 1e-8


@dataclass(frozen=True)
class MixtureDensity:
    """Density of M + T for discrete M and bounded symmetric noise T.

    Attributes:
        base: Distribution of M.
        kernel: Density of T, symmetric about 0.
        assembled: sum_i P(M = m_i) p_T(x - m_i) with hints at every
            component boundary.
    """

    base: Pmf
    kernel: BoundedDensity
    assembled: BoundedDensity

    @property
    def components(self) -> tuple[Interval, ...]:
        """Support of each shifted copy, pairwise disjoint."""
        return tuple(self.kernel.support.shifted(m) for m in self.base.values.tolist())


@dataclass(frozen=True)
class Lemma1Check:
    """Comparison of h(M + T) with H(M) + h(T).

    Attributes:
        lhs: h(M + T) by quadrature over the mixture.
        rhs: H(M) + h(T), the kernel entropy also by quadrature.
        gap: lhs - rhs.
        tolerance: Summed error estimates plus a 1e-8 slack.
        holds: Whether |gap| <= tolerance.
    """

    lhs: float
    rhs: float
    gap: float
    tolerance: float
    holds: bool


@dataclass(frozen=True)
class PerturbedEntropies:
    """Entropies of the perturbed pair, each by two routes.

    The identity route uses H + h(noise); the quadrature route integrates
    the assembled mixture directly.

    Attributes:
        h_x_identity: H(X) + h(W1).
        h_x_quadrature: h(X + W1) from the mixture.
        h_y_identity: H(Y) + h(W2).
        h_y_quadrature: h(Y + W2) from the mixture.
        h_sum_identity: H(X + Y) + h(W1 + W2).
        h_sum_quadrature: h(X + Y + W1 + W2) from the mixture.
        h_kernel: h(W1).
        h_kernel_sum: h(W1 + W2) from the grid self-convolution.
        max_route_gap: Largest disagreement between the two routes.
        consistent: Whether max_route_gap is within tolerance.
    """

    h_x_identity: float
    h_x_quadrature: float
    h_y_identity: float
    h_y_quadrature: float
    h_sum_identity: float
    h_sum_quadrature: float
    h_kernel: float
    h_kernel_sum: float
    max_route_gap: float
    consistent: bool


def mixture(base: Pmf, kernel: BoundedDensity) -> MixtureDensity:
    """Assemble the density of M + T.

    Args:
        base: Distribution of M.
        kernel: Density of T, supported on (-w, w).

    Returns:
        MixtureDensity whose assembled density has hints at every m_i +- w.

    Raises:
        PreconditionError: If the kernel support is not symmetric about 0.
        OverlapError: If w >= alpha_m / 2, i.e. components would touch.

    Example:
        >>> coin = new_pmf([(0, 0.5), (1, 0.5)])
        >>> mix = mixture(coin, uniform_density(0.25))
        >>> float(mix.assembled.evaluate(1.0))
        1.0
    """
    if not kernel.support.is_symmetric:
        raise PreconditionError(
            f"kernel support ({kernel.support.lo}, {kernel.support.hi}) is not symmetric about 0"
        )
    w = kernel.support.hi
    alpha = min_spacing(base).alpha
    if not w < alpha / 2.0:
        raise OverlapError(
            f"kernel half-width {w} must be strictly below alpha_m / 2 = {alpha / 2.0}",
            half_width=w,
            spacing=alpha,
        )

    atoms = base.values
    weights = base.probs

    def pdf(x: NDArray[np.float64]) -> NDArray[np.float64]:
        xs = np.asarray(x, dtype=np.float64)
        shifted = xs.reshape(-1, 1) - atoms
        return (kernel.evaluate(shifted) @ weights).reshape(xs.shape)

    hints = set()
    for m in atoms.tolist():
        hints.update((m - w, m + w))
        hints.update(m + h for h in kernel.smoothness_hints)
    assembled = BoundedDensity(
        support=Interval(float(atoms[0]) - w, float(atoms[-1]) + w),
        pdf=pdf,
        smoothness_hints=tuple(sorted(hints)),
        name=f"mixture[{base.size}]({kernel.name})",
    )
    return MixtureDensity(base=base, kernel=kernel, assembled=assembled)


def check_lemma1(
    base: Pmf,
    kernel: BoundedDensity,
    q: QuadratureConfig | None = None,
) -> Lemma1Check:
    """Verify h(M + T) = H(M) + h(T) by quadrature on both sides.

    Args:
        base: Distribution of M.
        kernel: Density of T satisfying the mixture preconditions.
        q: Quadrature parameters.

    Returns:
        Lemma1Check with both sides, their gap and the verdict.

    Raises:
        OverlapError: If the non-overlap condition fails.
        QuadratureError: If either integral fails to converge.
    """
    q = q or QuadratureConfig()
    mix = mixture(base, kernel)
    lhs = differential_entropy(mix.assembled, q)
    h_kernel = differential_entropy(kernel, q)
    rhs = discrete_entropy(base) + h_kernel.value
    gap = lhs.value - rhs
    tolerance = lhs.error + h_kernel.error + LEMMA1_ABS_SLACK
    holds = abs(gap) <= tolerance
    logger.debug("Lemma 1 check on %d atoms: gap %.3e (tol %.3e)", base.size, gap, tolerance)
    return Lemma1Check(lhs=lhs.value, rhs=rhs, gap=gap, tolerance=tolerance, holds=holds)


def perturbed_pair_entropies(
    x: Pmf,
    y: Pmf,
    kernel: BoundedDensity,
    q: QuadratureConfig | None = None,
    *,
    merge_eps: float = DEFAULT_MERGE_EPS,
    route_tol: float = 1e-6,
) -> PerturbedEntropies:
    """Entropies of X + W1, Y + W2 and X + Y + W1 + W2 by two routes.

    The kernel half-width w must satisfy w < alpha_z / 4 with alpha_z the
    minimum spacing of X + Y. Then each single perturbation is
    non-overlapping (alpha_z <= alpha_x, alpha_y) and |W1 + W2| < alpha_z / 2.

    Args:
        x: Distribution of X.
        y: Distribution of Y.
        kernel: Common density of W1 and W2.
        q: Quadrature parameters.
        merge_eps: Merge distance for X + Y.
        route_tol: Allowed disagreement between the two routes.

    Returns:
        PerturbedEntropies with the six entropies and route agreement.

    Raises:
        PreconditionError: If w >= alpha_z / 4 or the kernel is asymmetric.
        QuadratureError: If an integral fails to converge.
    """
    q = q or QuadratureConfig()
    z = convolve(x, y, merge_eps)
    alpha_z = min_spacing(z).alpha
    w = kernel.support.hi
    if not kernel.support.is_symmetric:
        raise PreconditionError("kernel support is not symmetric about 0")
    if not w < alpha_z / 4.0:
        raise PreconditionError(
            f"kernel half-width {w} must be strictly below alpha_z / 4 = {alpha_z / 4.0}",
            half_width=w,
            limit=alpha_z / 4.0,
        )

    h_kernel = differential_entropy(kernel, q).value
    kernel_sum = self_convolve(kernel, q)
    h_kernel_sum = differential_entropy(kernel_sum, q).value

    h_x_identity = discrete_entropy(x) + h_kernel
    h_y_identity = discrete_entropy(y) + h_kernel
    h_sum_identity = discrete_entropy(z) + h_kernel_sum

    h_x_quadrature = differential_entropy(mixture(x, kernel).assembled, q).value
    h_y_quadrature = differential_entropy(mixture(y, kernel).assembled, q).value
    h_sum_quadrature = differential_entropy(mixture(z, kernel_sum).assembled, q).value

    max_gap = max(
        abs(h_x_identity - h_x_quadrature),
        abs(h_y_identity - h_y_quadrature),
        abs(h_sum_identity - h_sum_quadrature),
    )
    consistent = max_gap <= route_tol
    if not consistent:
        logger.warning("Perturbed entropy routes disagree by %.3e", max_gap)
    return PerturbedEntropies(
        h_x_identity=h_x_identity,
        h_x_quadrature=h_x_quadrature,
        h_y_identity=h_y_identity,
        h_y_quadrature=h_y_quadrature,
        h_sum_identity=h_sum_identity,
        h_sum_quadrature=h_sum_quadrature,
        h_kernel=h_kernel,
        h_kernel_sum=h_kernel_sum,
        max_route_gap=max_gap,
        consistent=consistent,
    )


def max_kernel_half_width(x: Pmf, y: Pmf, merge_eps: float = DEFAULT_MERGE_EPS) -> float:
    """alpha_z / 4 for the pair, or 1/4 when X + Y is a singleton."""
    alpha_z = min_spacing(convolve(x, y, merge_eps)).alpha
    return 0.25 if math.isinf(alpha_z) else alpha_z / 4.0
