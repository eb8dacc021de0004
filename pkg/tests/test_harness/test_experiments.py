"""Tests for the experiment drivers."""

from __future__ import annotations

from pathlib import Path

import pytest

from infotheory.epi import QuadratureConfig, SpecialFamily, VerifyConfig
from infotheory.epi.harness import (
    CheckSummary,
    draw_pair,
    replay_trial,
    run_fuzz,
    run_lemma1_cases,
    run_lemma2_cases,
    run_lemma3_cases,
    run_sigma_sweep,
    run_special_cases,
)
from infotheory.epi.harness.experiments import trial_seeds


class TestTrialSeeds:
    """Tests for per-trial seed spawning."""

    def test_deterministic(self) -> None:
        """The same root seed spawns the same trial seeds."""
        assert list(trial_seeds(5, 10)) == list(trial_seeds(5, 10))

    def test_prefix_stable(self) -> None:
        """Asking for more trials does not change earlier seeds."""
        assert list(trial_seeds(5, 20))[:10] == list(trial_seeds(5, 10))

    def test_distinct(self) -> None:
        """Trial seeds do not repeat."""
        seeds = list(trial_seeds(0, 1000))
        assert len(set(seeds)) == 1000


class TestDrawPair:
    """Tests for fuzz pair generation."""

    def test_sizes_in_range(self) -> None:
        """Support sizes respect the inclusive range."""
        for trial_seed in trial_seeds(1, 50):
            x, y = draw_pair(trial_seed, (2, 3))
            assert 2 <= x.size <= 3
            assert 2 <= y.size <= 3

    def test_same_seed_same_pair(self) -> None:
        """A trial seed fully determines its pair."""
        assert draw_pair(1234) == draw_pair(1234)


class TestRunFuzz:
    """Tests for the fuzz driver."""

    def test_small_run_passes(self) -> None:
        """Two hundred seeded pairs all satisfy the doubled form."""
        summary = run_fuzz(200, seed=3)
        assert summary.passed
        assert summary.failures == 0
        assert summary.failing == []
        assert sum(summary.histogram_counts) == 200
        assert len(summary.histogram_edges) == len(summary.histogram_counts) + 1

    def test_worst_report_replays(self) -> None:
        """The worst pair is reproduced from its recorded seed."""
        summary = run_fuzz(100, seed=9)
        worst = summary.worst
        assert worst.seed is not None
        assert replay_trial(worst.seed) == worst
        assert worst.slack == summary.min_slack

    def test_deterministic(self) -> None:
        """Equal seeds give equal summaries."""
        assert run_fuzz(50, seed=1) == run_fuzz(50, seed=1)

    def test_singletons_counted(self) -> None:
        """Size range (1, 1) draws only point masses with zero slack."""
        summary = run_fuzz(20, (1, 1), seed=0)
        assert summary.singleton_draws == 20
        assert summary.min_slack_nonsingleton is None
        assert abs(summary.min_slack) <= 1e-12

    def test_config_tolerance_recorded(self) -> None:
        """Reports carry the tolerance they were checked against."""
        strict = VerifyConfig(pmf_tol=1e-15)
        summary = run_fuzz(30, (2, 4), seed=0, config=strict)
        assert summary.passed
        assert summary.worst.tolerances["assert_tol"] == 1e-15
        assert summary.min_slack_nonsingleton is not None
        assert summary.min_slack_nonsingleton > 0.0

    @pytest.mark.parametrize(
        ("trials", "size_range"), [(0, (1, 8)), (10, (0, 3)), (10, (5, 2))]
    )
    def test_rejects_bad_arguments(self, trials: int, size_range: tuple[int, int]) -> None:
        """trials >= 1 and 1 <= min <= max."""
        with pytest.raises(ValueError):
            run_fuzz(trials, size_range)


class TestRunSpecialCases:
    """Tests for the binomial and uniform families."""

    def test_small_table(self) -> None:
        """n_max = 6 gives 36 binomial rows and 25 uniform rows."""
        result = run_special_cases(6)
        assert len(result.rows) == 36 + 25
        assert result.passed
        assert result.failures() == []

    def test_binomial_rows_hold_strong_form(self) -> None:
        """Every binomial pair satisfies N(X) + N(Y) <= N(X + Y)."""
        result = run_special_cases(8)
        binomial = [r for r in result.rows if r.family is SpecialFamily.BINOMIAL_HALF]
        assert all(r.strong_holds for r in binomial)
        assert all(r.asserted for r in binomial)

    def test_mixed_uniform_rows_not_asserted(self) -> None:
        """Non-identical uniform pairs are reported only."""
        result = run_special_cases(4)
        mixed = [r for r in result.rows if r.family is SpecialFamily.UNIFORM_MIXED]
        assert len(mixed) == 6
        assert not any(r.asserted for r in mixed)
        assert all(r.doubled_holds for r in mixed)

    def test_csv(self, tmp_path: Path) -> None:
        """The table writes with one column per field."""
        out = tmp_path / "families.csv"
        run_special_cases(3).write_csv(out)
        header = out.read_text().splitlines()[0]
        assert header.startswith("family,n,m,lhs,N_z")

    def test_rejects_small_n_max(self) -> None:
        """n_max must be at least 2."""
        with pytest.raises(ValueError):
            run_special_cases(1)


class TestRunSigmaSweep:
    """Tests for the sweep driver."""

    def test_writes_csv(self, tmp_path: Path) -> None:
        """An out path receives the table."""
        out = tmp_path / "runs" / "sweep.csv"
        sweep = run_sigma_sweep(1.0, 0.1, out)
        assert out.exists()
        assert len(out.read_text().splitlines()) == len(sweep.rows) + 1


class TestLemmaDrivers:
    """Small runs of the per-step drivers."""

    def test_lemma1(self, fast_quadrature: QuadratureConfig) -> None:
        """A handful of mixtures satisfy the identity."""
        summary = run_lemma1_cases(6, seed=2, q=fast_quadrature)
        assert isinstance(summary, CheckSummary)
        assert summary.passed
        assert summary.cases == 6
        assert summary.worst <= 1e-6

    def test_lemma2(self) -> None:
        """The spacing bound holds on seeded pairs."""
        summary = run_lemma2_cases(200, seed=4)
        assert summary.passed
        assert summary.worst <= 1e-9

    def test_lemma3(self, fast_quadrature: QuadratureConfig) -> None:
        """A few pairs dominate the noise ratio."""
        summary = run_lemma3_cases(4, seed=5, q=fast_quadrature)
        assert summary.passed
        assert summary.worst <= summary.tolerance
