"""Numerical verification of the discrete entropy power inequality.

infotheory-epi computes discrete and differential entropy powers and
checks N(X) + N(Y) <= 2 N(X + Y) for independent discrete X and Y,
together with each numerical step of the perturbation argument behind it.

Core Concepts:
    - Pmf: Finite discrete distribution with sorted, merged atoms
    - BoundedDensity: Density on a bounded interval with quadrature hints
    - TruncatedGaussianSpec: Gaussian truncated to (-alpha_z/4, alpha_z/4)
    - MixtureDensity: Discrete variable plus small non-overlapping noise
    - EpiReport: Both sides of the doubled inequality for one pair
    - SigmaSweep: Descent in sigma until F(sigma) is close to 1
"""

__all__ = [
    # Configuration
    "QuadratureConfig",
    "VerifyConfig",
    "SweepConfig",
    "INV_2PI_E",
    # Enums
    "GeneratorKind",
    "Placement",
    "SpecialFamily",
    # Discrete distributions
    "Pmf",
    "Spacing",
    "SpacingCheck",
    "new_pmf",
    "concentrated_pmf",
    "discrete_entropy",
    "discrete_entropy_power",
    "min_spacing",
    "convolve",
    "spacing_bound_holds",
    "shift",
    "effective_support",
    # Densities
    "Interval",
    "BoundedDensity",
    "EntropyEstimate",
    "VarianceBound",
    "TruncatedGaussianSpec",
    "differential_entropy",
    "total_mass",
    "second_moment",
    "continuous_entropy_power",
    "uniform_density",
    "truncated_gaussian",
    "truncated_gaussian_density",
    "gaussian_tail_Q",
    "eta",
    "eta_bound",
    "phi_term",
    "k_minus_one_bound",
    "closed_form_entropy",
    "truncated_gaussian_second_moment",
    "variance_upper_bound",
    "log_F",
    "F",
    "self_convolve",
    # Perturbation
    "MixtureDensity",
    "Lemma1Check",
    "PerturbedEntropies",
    "mixture",
    "check_lemma1",
    "perturbed_pair_entropies",
    "max_kernel_half_width",
    # Verification
    "EpiReport",
    "NaiveEpiReport",
    "NoiseRatio",
    "Lemma3Check",
    "Lemma4Check",
    "LowerBoundCheck",
    "SweepRow",
    "SigmaSweep",
    "verify_theorem1",
    "naive_epi_check",
    "naive_epi_counterexample",
    "entropy_power_ratio",
    "lemma3_chain",
    "lemma4_upper_check",
    "lower_bound_chain_F",
    "sigma_search",
    "near_degenerate_slacks",
    "slack_is_monotone",
    # Exceptions
    "EpiError",
    "InvalidPmfError",
    "PmfFormatError",
    "InvalidDensityError",
    "PreconditionError",
    "OverlapError",
    "PlacementError",
    "QuadratureError",
    "ResolutionError",
    "SigmaSearchError",
]

from infotheory.epi.config import INV_2PI_E, QuadratureConfig, SweepConfig, VerifyConfig
from infotheory.epi.density import (
    F,
    BoundedDensity,
    EntropyEstimate,
    Interval,
    TruncatedGaussianSpec,
    VarianceBound,
    closed_form_entropy,
    continuous_entropy_power,
    differential_entropy,
    eta,
    eta_bound,
    gaussian_tail_Q,
    k_minus_one_bound,
    log_F,
    phi_term,
    second_moment,
    self_convolve,
    total_mass,
    truncated_gaussian,
    truncated_gaussian_density,
    truncated_gaussian_second_moment,
    uniform_density,
    variance_upper_bound,
)
from infotheory.epi.enums import GeneratorKind, Placement, SpecialFamily
from infotheory.epi.exceptions import (
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
from infotheory.epi.perturbation import (
    Lemma1Check,
    MixtureDensity,
    PerturbedEntropies,
    check_lemma1,
    max_kernel_half_width,
    mixture,
    perturbed_pair_entropies,
)
from infotheory.epi.pmf import (
    Pmf,
    Spacing,
    SpacingCheck,
    concentrated_pmf,
    convolve,
    discrete_entropy,
    discrete_entropy_power,
    effective_support,
    min_spacing,
    new_pmf,
    shift,
    spacing_bound_holds,
)
from infotheory.epi.verify import (
    EpiReport,
    Lemma3Check,
    Lemma4Check,
    LowerBoundCheck,
    NaiveEpiReport,
    NoiseRatio,
    SigmaSweep,
    SweepRow,
    entropy_power_ratio,
    lemma3_chain,
    lemma4_upper_check,
    lower_bound_chain_F,
    naive_epi_check,
    naive_epi_counterexample,
    near_degenerate_slacks,
    sigma_search,
    slack_is_monotone,
    verify_theorem1,
)
