"""Tests for finite discrete distributions.

Definitions under test:
    H(X) = -sum p_i ln p_i
    N(X) = exp(2 H(X)) / (2 pi e)
    alpha = min_{i != j} |x_i - x_j|,  +inf for one atom
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings

from infotheory.epi import (
    INV_2PI_E,
    InvalidPmfError,
    Pmf,
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
from tests.strategies import pmfs, real_pmfs


class TestNewPmf:
    """Tests for pmf construction."""

    def test_sorts_atoms(self) -> None:
        """Atoms come back in increasing value order."""
        p = new_pmf([(1, 0.5), (0, 0.5)])
        assert p.atoms == ((0.0, 0.5), (1.0, 0.5))

    def test_merges_coincident_atoms(self) -> None:
        """Atoms within merge_eps collapse to one atom of mass 1."""
        p = new_pmf([(0, 0.5), (1e-15, 0.5)], merge_eps=1e-12)
        assert p.size == 1
        assert p.probs[0] == pytest.approx(1.0, abs=1e-15)

    def test_merged_value_is_weighted_mean(self) -> None:
        """The merged atom sits at the probability-weighted mean."""
        p = new_pmf([(0.0, 0.25), (1e-10, 0.75)], merge_eps=1e-9)
        assert p.values[0] == pytest.approx(0.75e-10, rel=1e-12)

    def test_chain_merge(self) -> None:
        """Consecutive gaps below merge_eps chain into one group."""
        p = new_pmf([(0.0, 0.2), (0.6e-9, 0.3), (1.2e-9, 0.5)], merge_eps=1e-9)
        assert p.size == 1

    def test_rejects_excess_mass(self) -> None:
        """Mass 1.1 is an error, not renormalized."""
        with pytest.raises(InvalidPmfError) as exc_info:
            new_pmf([(0, 0.3), (1, 0.8)])
        assert exc_info.value.total_mass == pytest.approx(1.1)

    def test_renormalizes_small_drift(self) -> None:
        """Drift at the 1e-10 level is silently renormalized."""
        p = new_pmf([(0, 0.5), (1, 0.5 + 1e-10)])
        assert math.fsum(p.probs) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_drift_above_tolerance(self) -> None:
        """Drift of 1e-6 is rejected."""
        with pytest.raises(InvalidPmfError):
            new_pmf([(0, 0.5), (1, 0.500001)])

    def test_custom_normalization_tol(self) -> None:
        """A looser normalization_tol renormalizes drift of 1e-6."""
        p = new_pmf([(0, 0.5), (1, 0.500001)], normalization_tol=1e-5)
        assert math.fsum(p.probs) == pytest.approx(1.0, abs=1e-12)
        with pytest.raises(InvalidPmfError):
            new_pmf([(0, 0.5), (1, 0.5 + 1e-10)], normalization_tol=1e-12)

    def test_rejects_negative_probability(self) -> None:
        """Negative probabilities are rejected."""
        with pytest.raises(InvalidPmfError, match="nonnegative"):
            new_pmf([(0, 1.2), (1, -0.2)])

    def test_rejects_empty(self) -> None:
        """An empty pair list is rejected."""
        with pytest.raises(InvalidPmfError):
            new_pmf([])

    def test_rejects_non_finite(self) -> None:
        """NaN and infinite entries are rejected."""
        with pytest.raises(InvalidPmfError):
            new_pmf([(float("nan"), 1.0)])
        with pytest.raises(InvalidPmfError):
            new_pmf([(0.0, float("inf"))])

    def test_drops_zero_probability_atoms(self) -> None:
        """Zero-probability atoms vanish."""
        p = new_pmf([(0, 1.0), (5, 0.0)])
        assert p.atoms == ((0.0, 1.0),)

    def test_rejects_negative_merge_eps(self) -> None:
        """merge_eps must be nonnegative."""
        with pytest.raises(InvalidPmfError):
            new_pmf([(0, 1.0)], merge_eps=-1.0)

    def test_invalid_pmf_error_is_value_error(self) -> None:
        """InvalidPmfError can be caught as ValueError."""
        with pytest.raises(ValueError):
            new_pmf([])


class TestPmfType:
    """Tests for the Pmf value type."""

    def test_arrays_are_read_only(self, coin: Pmf) -> None:
        """Atom arrays cannot be mutated in place."""
        with pytest.raises(ValueError):
            coin.probs[0] = 0.9

    def test_is_frozen(self, coin: Pmf) -> None:
        """Fields cannot be reassigned."""
        from dataclasses import FrozenInstanceError

        with pytest.raises(FrozenInstanceError):
            coin.values = np.array([0.0, 2.0])  # type: ignore[misc]

    def test_constructor_validates_order(self) -> None:
        """Direct construction rejects unsorted values."""
        with pytest.raises(InvalidPmfError, match="increasing"):
            Pmf(values=np.array([1.0, 0.0]), probs=np.array([0.5, 0.5]))

    def test_constructor_validates_mass(self) -> None:
        """Direct construction holds mass to 1e-12."""
        with pytest.raises(InvalidPmfError):
            Pmf(values=np.array([0.0, 1.0]), probs=np.array([0.5, 0.5 + 1e-9]))

    def test_equality_and_hash(self) -> None:
        """Equal atoms give equal, equally hashed pmfs."""
        a = new_pmf([(0, 0.5), (1, 0.5)])
        b = new_pmf([(1, 0.5), (0, 0.5)])
        assert a == b
        assert hash(a) == hash(b)
        assert a != new_pmf([(0, 0.5), (2, 0.5)])

    def test_repr_lists_atoms(self, coin: Pmf) -> None:
        """repr shows the atoms."""
        assert repr(coin) == "Pmf(atoms=((0.0, 0.5), (1.0, 0.5)))"

    def test_from_arrays(self) -> None:
        """from_arrays sorts and validates parallel arrays."""
        p = Pmf.from_arrays([2.0, 0.0, 1.0], [0.2, 0.5, 0.3])
        assert p.values.tolist() == [0.0, 1.0, 2.0]
        assert p.probs.tolist() == pytest.approx([0.5, 0.3, 0.2])

    def test_singleton_flag(self, coin: Pmf, point_mass: Pmf) -> None:
        """is_singleton is true only for one atom."""
        assert point_mass.is_singleton
        assert not coin.is_singleton


class TestDiscreteEntropy:
    """Tests for discrete entropy."""

    def test_fair_coin(self, coin: Pmf) -> None:
        """A fair coin has entropy ln 2."""
        assert discrete_entropy(coin) == pytest.approx(math.log(2), abs=1e-15)

    def test_singleton_is_zero(self, point_mass: Pmf) -> None:
        """A point mass has zero entropy."""
        assert discrete_entropy(point_mass) == 0.0

    def test_depends_only_on_probabilities(self) -> None:
        """Relocating atoms leaves entropy unchanged."""
        a = new_pmf([(0, 0.3), (10, 0.7)])
        b = new_pmf([(-5, 0.7), (2, 0.3)])
        assert discrete_entropy(a) == discrete_entropy(b)

    def test_equiprobable_attains_log_k(self) -> None:
        """k equiprobable atoms attain the ln k upper bound."""
        for k in (2, 5, 17):
            p = Pmf.from_arrays(np.arange(k), np.full(k, 1.0 / k))
            assert discrete_entropy(p) == pytest.approx(math.log(k), abs=1e-14)

    def test_near_degenerate_keeps_tiny_entropy(self) -> None:
        """Entropy of mass 1 - 1e-12 on one atom is positive and tiny."""
        p = new_pmf([(0, 1.0 - 1e-12), (1, 1e-12)])
        expected = -(1e-12) * math.log(1e-12) - (1.0 - 1e-12) * math.log1p(-1e-12)
        assert discrete_entropy(p) == pytest.approx(expected, rel=1e-6)

    @given(p=pmfs())
    @settings(max_examples=200)
    def test_entropy_bounds(self, p: Pmf) -> None:
        """0 <= H <= ln k."""
        h = discrete_entropy(p)
        assert 0.0 <= h <= math.log(p.size) + 1e-12


class TestDiscreteEntropyPower:
    """Tests for discrete entropy power."""

    def test_singleton(self, point_mass: Pmf) -> None:
        """A point mass has entropy power 1/(2 pi e)."""
        assert discrete_entropy_power(point_mass) == pytest.approx(0.0585498, rel=1e-6)
        assert discrete_entropy_power(point_mass) == INV_2PI_E

    def test_fair_coin(self, coin: Pmf) -> None:
        """A fair coin has entropy power 4/(2 pi e)."""
        assert discrete_entropy_power(coin) == pytest.approx(0.234199, rel=1e-5)

    def test_two_coins(self) -> None:
        """The sum of two coins has entropy power 8/(2 pi e)."""
        p = new_pmf([(0, 0.25), (1, 0.5), (2, 0.25)])
        assert discrete_entropy_power(p) == pytest.approx(8 * INV_2PI_E, rel=1e-14)
        assert discrete_entropy_power(p) == pytest.approx(0.468398, rel=1e-5)

    @given(p=pmfs())
    @settings(max_examples=100)
    def test_floor_attained_only_by_singletons(self, p: Pmf) -> None:
        """N >= 1/(2 pi e) with equality exactly on singletons."""
        n = discrete_entropy_power(p)
        if p.is_singleton:
            assert n == INV_2PI_E
        else:
            assert n > INV_2PI_E


class TestMinSpacing:
    """Tests for minimum spacing."""

    def test_adjacent_gap_minimum(self) -> None:
        """{0, 1, 3} has spacing 1."""
        p = new_pmf([(0, 1 / 3), (1, 1 / 3), (3, 1 / 3)])
        assert min_spacing(p).alpha == 1.0

    def test_half_grid(self) -> None:
        """{0, 0.5, 1} has spacing 0.5."""
        p = new_pmf([(0, 1 / 3), (0.5, 1 / 3), (1, 1 / 3)])
        assert min_spacing(p).alpha == 0.5

    def test_singleton_is_infinite(self, point_mass: Pmf) -> None:
        """A point mass has infinite spacing."""
        spacing = min_spacing(point_mass)
        assert spacing.is_infinite
        assert float(spacing) == math.inf

    def test_spacing_must_be_positive(self) -> None:
        """Spacing rejects nonpositive values."""
        from infotheory.epi import Spacing

        with pytest.raises(ValueError):
            Spacing(alpha=0.0)


class TestConvolve:
    """Tests for the distribution of independent sums."""

    def test_two_coins(self, coin: Pmf) -> None:
        """coin + coin has the 1/4, 1/2, 1/4 pmf."""
        assert convolve(coin, coin).atoms == ((0.0, 0.25), (1.0, 0.5), (2.0, 0.25))

    def test_singleton_shifts(self, coin: Pmf) -> None:
        """Adding a point mass at c shifts every atom by c."""
        z = convolve(new_pmf([(2.5, 1.0)]), coin)
        assert z.atoms == ((2.5, 0.5), (3.5, 0.5))
        assert z == shift(coin, 2.5)

    def test_interleaved_supports(self, coin: Pmf, half_grid: Pmf) -> None:
        """{0, 1} + {0, 0.5} gives four atoms of mass 1/4."""
        z = convolve(coin, half_grid)
        assert z.values.tolist() == [0.0, 0.5, 1.0, 1.5]
        np.testing.assert_allclose(z.probs, 0.25, rtol=0, atol=1e-15)

    def test_binomial_identity(self) -> None:
        """Summing five coins gives B(5, 1/2)."""
        from scipy.stats import binom

        coin = new_pmf([(0, 0.5), (1, 0.5)])
        z = coin
        for _ in range(4):
            z = convolve(z, coin)
        np.testing.assert_allclose(z.probs, binom.pmf(np.arange(6), 5, 0.5), atol=1e-15)

    @given(x=pmfs(), y=pmfs())
    @settings(max_examples=100)
    def test_mass_preserved(self, x: Pmf, y: Pmf) -> None:
        """Total mass stays 1 within 1e-12 and atom count is at most |x||y|."""
        z = convolve(x, y)
        assert math.fsum(z.probs) == pytest.approx(1.0, abs=1e-12)
        assert z.size <= x.size * y.size

    @given(x=real_pmfs(), y=real_pmfs())
    @settings(max_examples=100)
    def test_commutative(self, x: Pmf, y: Pmf) -> None:
        """X + Y and Y + X agree up to merge-level jitter."""
        a, b = convolve(x, y), convolve(y, x)
        assert a.size == b.size
        np.testing.assert_allclose(a.values, b.values, rtol=0, atol=1e-9)
        np.testing.assert_allclose(a.probs, b.probs, rtol=0, atol=1e-12)

    @given(x=pmfs(), y=pmfs())
    @settings(max_examples=200)
    def test_sum_entropy_dominates(self, x: Pmf, y: Pmf) -> None:
        """H(X + Y) >= max(H(X), H(Y))."""
        h_z = discrete_entropy(convolve(x, y))
        assert h_z >= max(discrete_entropy(x), discrete_entropy(y)) - 1e-12


class TestSpacingBound:
    """Tests for alpha_z <= min(alpha_x, alpha_y)."""

    def test_interleaved(self, coin: Pmf, half_grid: Pmf) -> None:
        """alpha_z = 0.5 = min(1, 0.5)."""
        check = spacing_bound_holds(coin, half_grid)
        assert check.alpha_z == 0.5
        assert check.holds

    def test_two_singletons(self) -> None:
        """Three infinite spacings still satisfy the bound."""
        a, b = new_pmf([(0, 1.0)]), new_pmf([(1, 1.0)])
        check = spacing_bound_holds(a, b)
        assert check.alpha_x == check.alpha_y == check.alpha_z == math.inf
        assert check.holds

    def test_two_coins(self, coin: Pmf) -> None:
        """coin + coin: alpha_z = 1 <= 1."""
        check = spacing_bound_holds(coin, coin)
        assert check.alpha_z == 1.0
        assert check.holds

    @given(x=real_pmfs(), y=real_pmfs())
    @settings(max_examples=300)
    def test_holds_on_random_pairs(self, x: Pmf, y: Pmf) -> None:
        """The bound never fails."""
        assert spacing_bound_holds(x, y).holds


class TestEffectiveSupport:
    """Tests for the mass-covering atom set."""

    def test_drops_light_atoms(self) -> None:
        """With mass_tol 0.1 only the 0.9 atom is needed."""
        p = new_pmf([(0, 0.9), (1, 0.05), (2, 0.05)])
        assert effective_support(p, 0.1) == (0.0,)

    def test_keeps_atoms_until_covered(self) -> None:
        """With mass_tol 0.05 two atoms are needed."""
        p = new_pmf([(0, 0.9), (1, 0.05), (2, 0.05)])
        assert effective_support(p, 0.05) == (0.0, 1.0)

    def test_zero_tolerance_keeps_everything(self, three_point: Pmf) -> None:
        """mass_tol 0 returns the whole support."""
        assert effective_support(three_point, 0.0) == (0.0, 1.0, 2.0)

    def test_rejects_bad_tolerance(self, coin: Pmf) -> None:
        """mass_tol outside [0, 1) is rejected."""
        with pytest.raises(ValueError):
            effective_support(coin, 1.0)


class TestConcentratedPmf:
    """Tests for near-degenerate pmfs."""

    def test_mass_split(self) -> None:
        """Mass 0.99 on the first atom, 0.005 on each other."""
        p = concentrated_pmf(3, 0.01)
        assert p.values.tolist() == [0.0, 1.0, 2.0]
        assert p.probs.tolist() == pytest.approx([0.99, 0.005, 0.005], abs=1e-15)

    def test_rejects_single_atom(self) -> None:
        """At least two atoms are required."""
        with pytest.raises(InvalidPmfError):
            concentrated_pmf(1, 0.1)

    def test_rejects_delta_out_of_range(self) -> None:
        """delta must lie in (0, 1)."""
        with pytest.raises(InvalidPmfError):
            concentrated_pmf(3, 1.0)
