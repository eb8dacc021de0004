"""Seeded generators of discrete distributions.

Every generator is a pure function of its GeneratorSpec: the same spec,
seed included, always yields the same Pmf.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.stats import binom

from infotheory.epi.config import DEFAULT_MERGE_EPS
from infotheory.epi.enums import GeneratorKind, Placement
from infotheory.epi.exceptions import PlacementError
from infotheory.epi.harness.io import read_pmf
from infotheory.epi.pmf import Pmf, concentrated_pmf

logger = logging.getLogger(__name__)

# Random-real atoms are drawn from [0, REAL_RANGE] with gaps at least MIN_REAL_GAP.
REAL_RANGE = 10.0
MIN_REAL_GAP = 1e-3
_MAX_PLACEMENT_DRAWS = 10_000


class GeneratorSpec(BaseModel):
    """Parameters of one generated distribution.

    Only the fields relevant to ``kind`` are read.

    Attributes:
        kind: Distribution family.
        support_size: Atom count k (random, uniform, near_degenerate).
        trials: Binomial n.
        success_prob: Binomial p.
        delta: Off-atom mass of a near-degenerate pmf.
        placement: Value placement for random, uniform and near_degenerate.
        seed: Seed for every random draw.
        path: Pmf file for from_file.

    Example:
        >>> spec = GeneratorSpec(kind=GeneratorKind.BINOMIAL, trials=2)
        >>> generate(spec).atoms
        ((0.0, 0.25), (1.0, 0.5), (2.0, 0.25))
    """

    model_config = ConfigDict(frozen=True)

    kind: GeneratorKind = Field(description="Distribution family")
    support_size: int = Field(default=2, ge=1, description="Atom count k")
    trials: int = Field(default=1, ge=1, description="Binomial trial count n")
    success_prob: float = Field(default=0.5, gt=0.0, lt=1.0, description="Binomial p")
    delta: float = Field(default=0.01, gt=0.0, lt=1.0, description="Near-degenerate off-atom mass")
    placement: Placement = Field(default=Placement.INTEGER_GRID, description="Value placement")
    seed: int | None = Field(default=None, ge=0, description="Seed for random draws")
    path: Path | None = Field(default=None, description="Pmf file for from_file")

    @model_validator(mode="after")
    def validate_kind_params(self) -> GeneratorSpec:
        """Reject parameter combinations the chosen kind cannot use."""
        if self.kind is GeneratorKind.NEAR_DEGENERATE and self.support_size < 2:
            raise ValueError("near_degenerate needs support_size >= 2")
        if self.kind is GeneratorKind.FROM_FILE and self.path is None:
            raise ValueError("from_file needs a path")
        return self


def generate(spec: GeneratorSpec) -> Pmf:
    """Build the pmf described by a spec.

    Args:
        spec: Validated generator parameters.

    Returns:
        The generated Pmf.

    Raises:
        InvalidPmfError: If the result violates the pmf invariants.
        PmfFormatError: If a from_file pmf cannot be parsed.
    """
    rng = np.random.default_rng(spec.seed)
    k = spec.support_size

    match spec.kind:
        case GeneratorKind.BINOMIAL:
            return binomial_pmf(spec.trials, spec.success_prob)
        case GeneratorKind.UNIFORM:
            return Pmf.from_arrays(place_values(k, spec.placement, rng), np.full(k, 1.0 / k))
        case GeneratorKind.NEAR_DEGENERATE:
            shape = concentrated_pmf(k, spec.delta)
            return Pmf.from_arrays(place_values(k, spec.placement, rng), shape.probs)
        case GeneratorKind.RANDOM:
            return random_pmf(rng, k, spec.placement)
        case GeneratorKind.FROM_FILE:
            assert spec.path is not None
            return read_pmf(spec.path)


def binomial_pmf(n: int, p: float) -> Pmf:
    """B(n, p) on {0, ..., n}."""
    support = np.arange(n + 1, dtype=np.float64)
    return Pmf.from_arrays(support, binom.pmf(support, n, p), merge_eps=0.0)


def random_pmf(rng: np.random.Generator, k: int, placement: Placement) -> Pmf:
    """k atoms with flat-simplex probabilities at placed values."""
    values = place_values(k, placement, rng)
    probs = rng.dirichlet(np.ones(k))
    return Pmf.from_arrays(values, probs, merge_eps=DEFAULT_MERGE_EPS)


def place_values(
    k: int,
    placement: Placement,
    rng: np.random.Generator,
) -> NDArray[np.float64]:
    """Atom locations for k atoms.

    Integer-grid values are 0, ..., k - 1. Random-real values are sorted
    uniform draws on [0, 10], redrawn until every gap is at least 1e-3.
    """
    if placement is Placement.INTEGER_GRID:
        return np.arange(k, dtype=np.float64)
    for _ in range(_MAX_PLACEMENT_DRAWS):
        values = np.sort(rng.uniform(0.0, REAL_RANGE, size=k))
        if k == 1 or np.min(np.diff(values)) >= MIN_REAL_GAP:
            return values
    raise PlacementError(
        f"could not place {k} atoms in [0, {REAL_RANGE:g}] with gap {MIN_REAL_GAP}",
        support_size=k,
        min_gap=MIN_REAL_GAP,
    )
