"""Generators, file formats and experiment drivers for the command line."""

__all__ = [
    # Generators
    "GeneratorSpec",
    "generate",
    "binomial_pmf",
    # File formats
    "read_pmf",
    "write_pmf",
    # Experiments
    "CheckSummary",
    "FuzzSummary",
    "SpecialCaseRow",
    "SpecialCasesResult",
    "draw_pair",
    "replay_trial",
    "run_fuzz",
    "run_special_cases",
    "run_sigma_sweep",
    "run_lemma1_cases",
    "run_lemma2_cases",
    "run_lemma3_cases",
    "run_lemma4_checks",
]

from infotheory.epi.harness.experiments import (
    CheckSummary,
    FuzzSummary,
    SpecialCaseRow,
    SpecialCasesResult,
    draw_pair,
    replay_trial,
    run_fuzz,
    run_lemma1_cases,
    run_lemma2_cases,
    run_lemma3_cases,
    run_lemma4_checks,
    run_sigma_sweep,
    run_special_cases,
)
from infotheory.epi.harness.generators import GeneratorSpec, binomial_pmf, generate
from infotheory.epi.harness.io import read_pmf, write_pmf
