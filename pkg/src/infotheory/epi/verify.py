"""Discrete entropy power inequality checks.

Verifies N(X) + N(Y) <= 2 N(X + Y) for independent discrete X and Y and
every step of the perturbation argument behind it: the entropy-power
ratio of a perturbed pair against the noise ratio, the continuous upper
bound of 1/2 on that ratio, and the truncated Gaussian family whose ratio
function F(sigma) tends to 1.

Mathematical formulation (natural logarithms):
    Doubled inequality:  N(X) + N(Y) <= 2 N(X + Y)
    Noise ratio:         r(W) = exp(2 h(W1)) / exp(2 h(W1 + W2)),  W1, W2 iid
    Pair chain:          N(X + Y) / (N(X) + N(Y)) >= r(W)   for |W| < alpha_z / 4
    Upper bound:         r(W) <= 1/2            (continuous inequality)
    Lower bound:         r(p_sigma) >= F(sigma) / 2

Where:
    N = discrete entropy power exp(2 H) / (2 pi e)
    alpha_z = minimum spacing of X + Y
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

import polars as pl
from pydantic import BaseModel, ConfigDict, Field

from infotheory.epi.config import DEFAULT_MERGE_EPS, QuadratureConfig, SweepConfig
from infotheory.epi.density import (
    BoundedDensity,
    TruncatedGaussianSpec,
    closed_form_entropy,
    differential_entropy,
    eta,
    log_F,
    phi_term,
    self_convolve,
    truncated_gaussian_density,
)
from infotheory.epi.exceptions import PreconditionError, SigmaSearchError
from infotheory.epi.pmf import (
    Pmf,
    concentrated_pmf,
    convolve,
    discrete_entropy,
    discrete_entropy_power,
    min_spacing,
)

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ("sigma", "K", "eta", "Phi", "F")

# The continuous inequality caps the noise ratio at exactly one half.
RATIO_UPPER = 0.5


class EpiReport(BaseModel):
    """Both sides of the doubled inequality for one pair.

    Attributes:
        H_x: Discrete entropy of X (nats).
        H_y: Discrete entropy of Y.
        H_z: Discrete entropy of X + Y.
        N_x: Entropy power of X.
        N_y: Entropy power of Y.
        N_z: Entropy power of X + Y.
        lhs: N_x + N_y.
        rhs: 2 N_z.
        slack: rhs - lhs.
        holds: Whether slack >= -assert_tol.
        seed: Generator seed, when the pair came from one.
        size_x: Atom count of X.
        size_y: Atom count of Y.
        tolerances: Tolerances used (assert_tol, merge_eps).

    Example:
        >>> coin = new_pmf([(0, 0.5), (1, 0.5)])
        >>> verify_theorem1(coin, coin).holds
        True
    """

    model_config = ConfigDict(frozen=True)

    H_x: float = Field(ge=0.0, description="Discrete entropy of X")
    H_y: float = Field(ge=0.0, description="Discrete entropy of Y")
    H_z: float = Field(ge=0.0, description="Discrete entropy of X + Y")
    N_x: float = Field(gt=0.0, description="Entropy power of X")
    N_y: float = Field(gt=0.0, description="Entropy power of Y")
    N_z: float = Field(gt=0.0, description="Entropy power of X + Y")
    lhs: float = Field(gt=0.0, description="N(X) + N(Y)")
    rhs: float = Field(gt=0.0, description="2 N(X + Y)")
    slack: float = Field(description="rhs - lhs")
    holds: bool = Field(description="Whether the inequality holds within tolerance")
    seed: int | None = Field(default=None, description="Generator seed for replay")
    size_x: int = Field(ge=1, description="Atom count of X")
    size_y: int = Field(ge=1, description="Atom count of Y")
    tolerances: dict[str, float] = Field(default_factory=dict)


class NaiveEpiReport(BaseModel):
    """The un-doubled comparison N(X) + N(Y) versus N(X + Y).

    Attributes:
        N_x: Entropy power of X.
        N_y: Entropy power of Y.
        N_z: Entropy power of X + Y.
        lhs: N_x + N_y.
        rhs: N_z.
        slack: rhs - lhs.
        holds: Whether the naive inequality holds within tolerance.
    """

    model_config = ConfigDict(frozen=True)

    N_x: float
    N_y: float
    N_z: float
    lhs: float
    rhs: float
    slack: float
    holds: bool


@dataclass(frozen=True)
class NoiseRatio:
    """exp(2 h(W1)) / exp(2 h(W1 + W2)) for iid noise.

    Attributes:
        h_single: h(W1).
        h_sum: h(W1 + W2).
        ratio: exp(2 (h_single - h_sum)).
        error: Summed quadrature error estimates of the two entropies.
    """

    h_single: float
    h_sum: float
    ratio: float
    error: float


@dataclass(frozen=True)
class Lemma3Check:
    """Entropy-power ratio of a pair against the noise ratio.

    Attributes:
        ratio_lhs: N(X + Y) / (N(X) + N(Y)).
        ratio_rhs: Noise ratio of the truncated Gaussian.
        alpha_z: Minimum spacing of X + Y (+inf for a singleton sum).
        holds: Whether ratio_lhs >= ratio_rhs - tol.
    """

    ratio_lhs: float
    ratio_rhs: float
    alpha_z: float
    holds: bool


@dataclass(frozen=True)
class Lemma4Check:
    """Noise ratio against its upper bound of one half.

    Attributes:
        ratio: Noise ratio by quadrature.
        bound_half: Always 0.5.
        holds: Whether ratio <= 0.5 + tol.
    """

    ratio: float
    bound_half: float
    holds: bool


@dataclass(frozen=True)
class LowerBoundCheck:
    """Closed-form lower bound F(sigma) / 2 against the quadrature ratio.

    Attributes:
        half_F: F(sigma) / 2.
        ratio_rhs: Noise ratio of the truncated Gaussian by quadrature.
        h_closed_form: Closed-form entropy of one truncated copy.
        holds: Whether ratio_rhs >= half_F - tol.
    """

    half_F: float
    ratio_rhs: float
    h_closed_form: float
    holds: bool


@dataclass(frozen=True)
class SweepRow:
    """One sigma of the sweep."""

    sigma: float
    K: float
    eta: float
    Phi: float
    F: float


@dataclass(frozen=True)
class SigmaSweep:
    """Geometric descent in sigma until F(sigma) >= 1 - epsilon.

    Attributes:
        alpha_z: Spacing fixing the truncation at alpha_z / 4.
        epsilon: Target gap below 1.
        rows: Evaluated rows, sigma decreasing.
        sigma0: Last (first qualifying) sigma.
    """

    alpha_z: float
    epsilon: float
    rows: tuple[SweepRow, ...]
    sigma0: float

    @property
    def final_f(self) -> float:
        return self.rows[-1].F

    def to_frame(self) -> pl.DataFrame:
        """Rows as a DataFrame with columns sigma, K, eta, Phi, F."""
        return pl.DataFrame(
            {name: [getattr(row, name) for row in self.rows] for name in SWEEP_COLUMNS},
            schema={name: pl.Float64 for name in SWEEP_COLUMNS},
        )

    def write_csv(self, path: str | Path) -> None:
        self.to_frame().write_csv(path)


def verify_theorem1(
    x: Pmf,
    y: Pmf,
    assert_tol: float = 1e-9,
    *,
    merge_eps: float = DEFAULT_MERGE_EPS,
    seed: int | None = None,
) -> EpiReport:
    """Check N(X) + N(Y) <= 2 N(X + Y) from exact pmf arithmetic.

    Args:
        x: Distribution of X.
        y: Distribution of Y.
        assert_tol: Allowed negative slack.
        merge_eps: Merge distance for X + Y.
        seed: Recorded in the report for replay.

    Returns:
        EpiReport with entropies, entropy powers and the verdict.

    Example:
        >>> s = new_pmf([(0.0, 1.0)])
        >>> verify_theorem1(s, s).slack
        0.0
    """
    z = convolve(x, y, merge_eps)
    n_x, n_y, n_z = discrete_entropy_power(x), discrete_entropy_power(y), discrete_entropy_power(z)
    lhs = n_x + n_y
    rhs = 2.0 * n_z
    slack = rhs - lhs
    holds = slack >= -assert_tol
    if not holds:
        logger.warning("Doubled inequality violated: slack %.3e (seed=%s)", slack, seed)
    return EpiReport(
        H_x=discrete_entropy(x),
        H_y=discrete_entropy(y),
        H_z=discrete_entropy(z),
        N_x=n_x,
        N_y=n_y,
        N_z=n_z,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        holds=holds,
        seed=seed,
        size_x=x.size,
        size_y=y.size,
        tolerances={"assert_tol": assert_tol, "merge_eps": merge_eps},
    )


def naive_epi_check(
    x: Pmf,
    y: Pmf,
    assert_tol: float = 1e-9,
    *,
    merge_eps: float = DEFAULT_MERGE_EPS,
) -> NaiveEpiReport:
    """Compare N(X) + N(Y) with N(X + Y), without the factor 2."""
    n_x = discrete_entropy_power(x)
    n_y = discrete_entropy_power(y)
    n_z = discrete_entropy_power(convolve(x, y, merge_eps))
    lhs = n_x + n_y
    slack = n_z - lhs
    return NaiveEpiReport(
        N_x=n_x,
        N_y=n_y,
        N_z=n_z,
        lhs=lhs,
        rhs=n_z,
        slack=slack,
        holds=slack >= -assert_tol,
    )


def naive_epi_counterexample() -> NaiveEpiReport:
    """Two point masses: 2/(2 pi e) on the left against 1/(2 pi e) on the right."""
    point = Pmf(values=[0.0], probs=[1.0])
    report = naive_epi_check(point, point)
    logger.info("Naive form on two singletons: lhs %.6f > rhs %.6f", report.lhs, report.rhs)
    return report


def entropy_power_ratio(kernel: BoundedDensity, q: QuadratureConfig | None = None) -> NoiseRatio:
    """Noise ratio exp(2 h(W1)) / exp(2 h(W1 + W2)) for W1, W2 iid ~ kernel.

    h(W1 + W2) comes from the grid self-convolution followed by quadrature.

    Args:
        kernel: Common density of W1 and W2.
        q: Quadrature parameters.

    Returns:
        NoiseRatio with both entropies.
    """
    q = q or QuadratureConfig()
    single = differential_entropy(kernel, q)
    total = differential_entropy(self_convolve(kernel, q), q)
    ratio = math.exp(2.0 * (single.value - total.value))
    logger.debug("Noise ratio of %s: %.9f", kernel.name, ratio)
    return NoiseRatio(
        h_single=single.value,
        h_sum=total.value,
        ratio=ratio,
        error=single.error + total.error,
    )


def lemma3_chain(
    x: Pmf,
    y: Pmf,
    spec: TruncatedGaussianSpec,
    q: QuadratureConfig | None = None,
    *,
    merge_eps: float = DEFAULT_MERGE_EPS,
    tol: float = 1e-6,
) -> Lemma3Check:
    """Check N(X + Y) / (N(X) + N(Y)) >= noise ratio for a truncated Gaussian.

    Args:
        x: Distribution of X.
        y: Distribution of Y.
        spec: Noise with half_width <= alpha_z / 4.
        q: Quadrature parameters.
        merge_eps: Merge distance for X + Y.
        tol: Allowed shortfall of the pair ratio.

    Returns:
        Lemma3Check with both ratios.

    Raises:
        PreconditionError: If spec.half_width exceeds alpha_z / 4.
    """
    z = convolve(x, y, merge_eps)
    alpha_z = min_spacing(z).alpha
    if spec.half_width > alpha_z / 4.0:
        raise PreconditionError(
            f"noise half-width {spec.half_width} exceeds alpha_z / 4 = {alpha_z / 4.0}",
            half_width=spec.half_width,
            limit=alpha_z / 4.0,
        )
    ratio_lhs = discrete_entropy_power(z) / (discrete_entropy_power(x) + discrete_entropy_power(y))
    ratio_rhs = entropy_power_ratio(truncated_gaussian_density(spec), q).ratio
    return Lemma3Check(
        ratio_lhs=ratio_lhs,
        ratio_rhs=ratio_rhs,
        alpha_z=alpha_z,
        holds=ratio_lhs >= ratio_rhs - tol,
    )


def lemma4_upper_check(
    noise: TruncatedGaussianSpec | BoundedDensity,
    q: QuadratureConfig | None = None,
    *,
    tol: float = 1e-4,
) -> Lemma4Check:
    """Check that the noise ratio does not exceed one half.

    Args:
        noise: Truncated Gaussian spec or any bounded density.
        q: Quadrature parameters.
        tol: Allowed excess over 0.5.

    Returns:
        Lemma4Check with the ratio.
    """
    kernel = (
        truncated_gaussian_density(noise) if isinstance(noise, TruncatedGaussianSpec) else noise
    )
    ratio = entropy_power_ratio(kernel, q).ratio
    return Lemma4Check(ratio=ratio, bound_half=RATIO_UPPER, holds=ratio <= RATIO_UPPER + tol)


def lower_bound_chain_F(
    spec: TruncatedGaussianSpec,
    alpha_z: float,
    q: QuadratureConfig | None = None,
    *,
    tol: float = 1e-6,
) -> LowerBoundCheck:
    """Check that F(sigma) / 2 lower-bounds the truncated Gaussian noise ratio.

    Args:
        spec: Truncated Gaussian with half_width = alpha_z / 4.
        alpha_z: Spacing fixing the truncation.
        q: Quadrature parameters.
        tol: Allowed shortfall of the ratio.

    Returns:
        LowerBoundCheck with both sides.

    Raises:
        PreconditionError: If spec.half_width differs from alpha_z / 4.
    """
    h_closed = closed_form_entropy(spec, alpha_z)
    half_f = 0.5 * math.exp(log_F(spec.sigma, alpha_z))
    ratio = entropy_power_ratio(truncated_gaussian_density(spec), q).ratio
    return LowerBoundCheck(
        half_F=half_f,
        ratio_rhs=ratio,
        h_closed_form=h_closed,
        holds=ratio >= half_f - tol,
    )


def sigma_search(
    alpha_z: float,
    epsilon: float,
    config: SweepConfig | None = None,
) -> SigmaSweep:
    """Sweep sigma geometrically down from alpha_z / 4 until F(sigma) >= 1 - epsilon.

    F depends on sigma only through c = alpha_z / (4 sigma), so the row
    count is the same for every alpha_z.

    Args:
        alpha_z: Positive finite spacing.
        epsilon: Target gap, in (0, 1).
        config: Descent ratio and step cap.

    Returns:
        SigmaSweep with all evaluated rows.

    Raises:
        ValueError: If alpha_z or epsilon is out of range.
        SigmaSearchError: If max_steps rows pass without reaching the target.

    Example:
        >>> sweep = sigma_search(1.0, 0.01)
        >>> sweep.final_f >= 0.99
        True
    """
    config = config or SweepConfig()
    if not (alpha_z > 0.0 and math.isfinite(alpha_z)):
        raise ValueError(f"alpha_z must be positive and finite, got {alpha_z}")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")

    target = 1.0 - epsilon
    sigma = alpha_z / 4.0
    rows: list[SweepRow] = []
    for _ in range(config.max_steps):
        spec = TruncatedGaussianSpec.for_alpha_z(sigma, alpha_z)
        row = SweepRow(
            sigma=sigma,
            K=spec.normalizer,
            eta=eta(sigma, alpha_z),
            Phi=phi_term(sigma, alpha_z),
            F=math.exp(log_F(sigma, alpha_z)),
        )
        rows.append(row)
        logger.debug("sigma=%.6g K=%.12g F=%.12g", row.sigma, row.K, row.F)
        if row.F >= target:
            logger.info(
                "sigma0 = %.6g after %d rows (alpha_z=%g, epsilon=%g)",
                sigma,
                len(rows),
                alpha_z,
                epsilon,
            )
            return SigmaSweep(alpha_z=alpha_z, epsilon=epsilon, rows=tuple(rows), sigma0=sigma)
        sigma *= config.ratio

    raise SigmaSearchError(
        f"F(sigma) stayed below {target} for {config.max_steps} steps",
        steps=len(rows),
        last_f=rows[-1].F,
    )


def near_degenerate_slacks(
    deltas: Iterable[float],
    support_size: int = 3,
) -> list[tuple[float, float]]:
    """Slack of the doubled inequality for X = Y concentrated with mass 1 - delta.

    Args:
        deltas: Off-atom masses in (0, 1).
        support_size: Atoms per variable.

    Returns:
        (delta, slack) pairs in input order.
    """
    out = []
    for delta in deltas:
        p = concentrated_pmf(support_size, delta)
        out.append((delta, verify_theorem1(p, p).slack))
    return out


def slack_is_monotone(slacks: Sequence[tuple[float, float]]) -> bool:
    """True when slack increases with delta across the given pairs."""
    ordered = sorted(slacks)
    return all(a[1] < b[1] for a, b in zip(ordered, ordered[1:], strict=False))
