"""Likelihood tempering and greedy subset selection."""

import numpy as np
import pytest

from timereward import (
    GpModel,
    TargetOutOfRange,
    conditional_ig_game,
    random_superadditive_game,
    select_subset,
    temper,
    tempered_value,
)
from timereward.realization import conditional_point_value
from timereward.valuation import information_gain, se_kernel


def three_party_model(seed=0, points_per_party=5, noise=0.2) -> GpModel:
    rng = np.random.default_rng(seed)
    m = 3 * points_per_party
    X = rng.uniform(size=(m, 2))
    ownership = np.repeat([1, 2, 3], points_per_party)
    return GpModel(X, ownership, np.array([0.6, 0.6]), 1.0, noise)


def tempered_value_oracle(model: GpModel, party: int, kappa: float) -> float:
    """Independent check via the total-information identity.

    Splitting each donor observation into precision shares kappa and
    1 - kappa leaves the joint information unchanged, so the tempered
    value equals IG(everything) - IG(donors at noise / (1 - kappa)).
    """
    others = model.points_of(p for p in range(1, model.n_parties + 1) if p != party)
    total = conditional_ig_game(model).grand_value()
    if kappa >= 1.0:
        return total
    K = se_kernel(model.inputs[others], model.lengthscales, model.signal_variance)
    cond_noise = model.noise_vector()[others] / (1.0 - kappa)
    return total - information_gain(K, cond_noise)


class TestTemperedValue:
    def test_kappa_zero_is_solo_conditional_value(self):
        model = three_party_model()
        game = conditional_ig_game(model)
        for party in (1, 2, 3):
            assert tempered_value(model, party, 0.0) == pytest.approx(
                game.value([party]), abs=1e-10
            )

    def test_kappa_one_is_grand_value(self):
        model = three_party_model()
        grand = conditional_ig_game(model).grand_value()
        for party in (1, 2, 3):
            assert tempered_value(model, party, 1.0) == pytest.approx(grand, abs=1e-10)

    @pytest.mark.parametrize("seed", range(3))
    def test_monotone_in_kappa(self, seed):
        model = three_party_model(seed)
        for party in (1, 2, 3):
            grid = [tempered_value(model, party, k) for k in np.linspace(0, 1, 17)]
            for a, b in zip(grid, grid[1:]):
                assert b >= a - 1e-10

    @pytest.mark.parametrize("kappa", [0.2, 0.5, 0.9])
    def test_matches_identity_oracle(self, kappa):
        model = three_party_model(2)
        for party in (1, 2, 3):
            assert tempered_value(model, party, kappa) == pytest.approx(
                tempered_value_oracle(model, party, kappa), abs=1e-8
            )

    def test_rejects_kappa_outside_unit_interval(self):
        with pytest.raises(ValueError):
            tempered_value(three_party_model(), 1, 1.5)


class TestTemper:
    def test_floor_target_returns_kappa_zero(self):
        model = three_party_model()
        game = conditional_ig_game(model)
        result = temper(model, 1, game.value([1]), tol=1e-6)
        assert result.kappa == pytest.approx(0.0, abs=1e-9)

    def test_ceiling_target_returns_kappa_one(self):
        model = three_party_model()
        grand = conditional_ig_game(model).grand_value()
        result = temper(model, 1, grand, tol=1e-6)
        assert result.kappa == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("fraction", [0.25, 0.5, 0.8])
    def test_midpoint_targets_hit_within_tolerance(self, fraction):
        model = three_party_model(1)
        game = conditional_ig_game(model)
        for party in (1, 2, 3):
            lo, hi = game.value([party]), game.grand_value()
            target = lo + fraction * (hi - lo)
            result = temper(model, party, target, tol=1e-6)
            assert abs(result.achieved_value - target) <= 1e-6
            assert 0.0 < result.kappa < 1.0
            # independent recomputation of the heteroscedastic value
            assert tempered_value(model, party, result.kappa) == pytest.approx(
                result.achieved_value, abs=1e-12
            )

    def test_out_of_range_targets_rejected(self):
        model = three_party_model()
        game = conditional_ig_game(model)
        with pytest.raises(TargetOutOfRange):
            temper(model, 1, game.value([1]) - 0.5)
        with pytest.raises(TargetOutOfRange):
            temper(model, 1, game.grand_value() + 0.5)


class TestSelectSubsetTable:
    def test_floor_target_selects_own_only(self):
        g = random_superadditive_game(3, seed=5)
        result = select_subset(g, 2, g.value([2]), seed=0)
        assert result.selected == (2,)
        assert not result.saturated

    def test_grand_target_selects_everything_saturated(self):
        g = random_superadditive_game(3, seed=5)
        result = select_subset(g, 2, g.grand_value(), seed=0)
        assert set(result.selected) == {1, 2, 3}
        assert result.saturated

    @pytest.mark.parametrize("seed", range(5))
    def test_crossing_invariants(self, seed):
        g = random_superadditive_game(4, seed=seed + 10)
        rng = np.random.default_rng(seed)
        party = int(rng.integers(1, 5))
        lo, hi = g.value([party]), g.grand_value()
        target = lo + float(rng.uniform(0.2, 0.8)) * (hi - lo)
        result = select_subset(g, party, target, seed=seed)
        assert result.achieved_value >= target or result.saturated
        if len(result.selected) > 1 and not result.saturated:
            predecessor = result.selected[:-1]
            assert g.value(predecessor) < target

    def test_deterministic_per_seed(self):
        g = random_superadditive_game(5, seed=3)
        target = 0.6 * g.grand_value()
        a = select_subset(g, 1, target, seed=11)
        b = select_subset(g, 1, target, seed=11)
        assert a == b

    def test_higher_targets_never_shrink_selection(self):
        g = random_superadditive_game(5, seed=4)
        lo, hi = g.value([1]), g.grand_value()
        sizes = []
        selections = []
        for fraction in (0.1, 0.3, 0.5, 0.7, 0.9):
            result = select_subset(g, 1, lo + fraction * (hi - lo), seed=7)
            sizes.append(len(result.selected))
            selections.append(set(result.selected))
        assert sizes == sorted(sizes)
        for small, large in zip(selections, selections[1:]):
            assert small <= large

    def test_out_of_range_rejected(self):
        g = random_superadditive_game(3, seed=5)
        with pytest.raises(TargetOutOfRange):
            select_subset(g, 1, g.grand_value() + 1.0, seed=0)
        with pytest.raises(TargetOutOfRange):
            select_subset(g, 1, g.value([1]) - 1.0, seed=0)

    def test_rejects_unknown_source(self):
        with pytest.raises(TypeError):
            select_subset(object(), 1, 0.5, seed=0)


class TestSelectSubsetGp:
    def test_point_level_selection(self):
        model = three_party_model(2)
        game = conditional_ig_game(model)
        lo, hi = game.value([2]), game.grand_value()
        target = 0.5 * (lo + hi)
        result = select_subset(model, 2, target, seed=1)
        own = set(int(k) for k in model.points_of([2]))
        assert own <= set(result.selected)
        assert result.achieved_value > target
        assert not result.saturated
        # both crossing invariants recomputed from scratch
        assert conditional_point_value(model, result.selected) == pytest.approx(
            result.achieved_value, abs=1e-12
        )
        assert conditional_point_value(model, result.selected[:-1]) < target

    def test_floor_keeps_own_points(self):
        model = three_party_model(2)
        game = conditional_ig_game(model)
        result = select_subset(model, 3, game.value([3]), seed=2)
        assert set(result.selected) == set(int(k) for k in model.points_of([3]))
