"""Incentive checkers F1-F8, predicates, and the scheme closures."""

import numpy as np
import pytest

from conftest import random_times
from timereward import (
    Game,
    PreconditionViolated,
    RewardVector,
    TimeVector,
    TooLarge,
    check_static,
    check_temporal,
    check_weak_efficiency,
    cumulation_scheme,
    full_incentive_report,
    make_table_game,
    naive_scheme,
    necessity_predicate,
    random_superadditive_game,
    reward_time_valuation,
    scale_rewards,
    shapley_scheme,
    strictness_predicate,
    time_valuation_scheme,
)


def symmetric_pair_game(seed=0, n=3):
    """Parties 1 and 2 are interchangeable in every coalition."""
    rng = np.random.default_rng(seed)
    d = rng.uniform(0.1, 1.0, size=1 << n)
    d[0] = 0.0
    swap = {0b001: 0b010, 0b010: 0b001}

    def swapped(mask):
        low = mask & 0b011
        rest = mask & ~0b011
        return swap.get(low, low) | rest

    for mask in range(1 << n):
        canon = min(mask, swapped(mask))
        d[mask] = d[canon]
    from timereward.games import subset_sums

    table = subset_sums(d)
    return Game(n, lambda m: table[m], table=table, superadditive=True)


class TestNecessityPredicate:
    def test_mutually_necessary_pair(self, necessity_counterexample):
        assert necessity_predicate(necessity_counterexample, 1, 2)

    def test_positive_solo_value_breaks_necessity(self, ir_counterexample):
        assert not necessity_predicate(ir_counterexample, 1, 2)

    def test_additive_positive_game(self):
        g = make_table_game(2, {"1": 0.3, "2": 0.4, "1,2": 0.7})
        assert not necessity_predicate(g, 1, 2)


class TestStrictnessPredicate:
    def test_fires_with_synergetic_predecessor(self, ir_counterexample, late_first):
        # C = {2}: v({1,2}) = 1 > 0.2 + 0.2
        assert strictness_predicate(ir_counterexample, late_first, 1)

    def test_additive_game_never_fires(self):
        g = make_table_game(2, {"1": 0.3, "2": 0.4, "1,2": 0.7})
        assert not strictness_predicate(g, TimeVector.of((4, 0)), 1)

    def test_earliest_party_has_no_predecessors(self, ir_counterexample, late_first):
        assert not strictness_predicate(ir_counterexample, late_first, 2)


class TestCheckStatic:
    def test_naive_fails_ir(self, ir_counterexample, late_first):
        from timereward import naive_time_division

        rewards = naive_time_division(ir_counterexample, late_first)
        report = check_static(ir_counterexample, late_first, rewards)
        assert report.status("F2") == "fail"
        assert report.checks["F2"].witnesses[0][0] == 1
        assert report.status("F1") == "pass"
        assert report.status("F6") == "pass"

    def test_naive_fails_necessity(self, necessity_counterexample, late_first):
        from timereward import naive_time_division

        rewards = naive_time_division(necessity_counterexample, late_first)
        report = check_static(necessity_counterexample, late_first, rewards)
        assert report.status("F6") == "fail"
        assert report.status("F2") == "pass"

    def test_f7_f8_not_applicable_without_scheme(self, ir_counterexample, late_first):
        report = check_static(ir_counterexample, late_first, np.array([0.5, 0.5]))
        assert report.status("F7") == "not_applicable"
        assert report.status("F8") == "not_applicable"

    @pytest.mark.parametrize("seed", range(5))
    def test_cumulation_passes_f1_to_f6(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 6))
        g = random_superadditive_game(n, seed + 200)
        times = random_times(rng, n)
        rewards = cumulation_scheme(1.0)(g, times)
        report = check_static(g, times, rewards)
        assert not report.failures

    def test_f3_symmetric_pair_fires_and_passes(self):
        g = symmetric_pair_game(seed=1)
        times = TimeVector.of((2, 2, 0))
        rewards = reward_time_valuation(g, times, 1.0)
        report = check_static(g, times, rewards)
        assert report.checks["F3"].instances == 1
        assert report.status("F3") == "pass"

    def test_f3_catches_unequal_rewards(self):
        g = symmetric_pair_game(seed=1)
        times = TimeVector.of((2, 2, 0))
        report = check_static(g, times, np.array([0.3, 0.4, 0.5]))
        assert report.status("F3") == "fail"

    def test_f4_fires_for_dominant_party(self):
        # party 1 strictly better than party 2 in every coalition
        g = make_table_game(
            3,
            {
                "1": 0.5, "2": 0.2, "3": 0.1,
                "1,2": 0.9, "1,3": 0.8, "2,3": 0.4,
                "1,2,3": 1.4,
            },
        )
        times = TimeVector.of((0, 0, 0))
        from timereward import shapley_exact

        phi = shapley_exact(g).values
        report = check_static(g, times, phi)
        assert report.checks["F4"].instances >= 1
        assert report.status("F4") == "pass"
        report_bad = check_static(g, times, np.array([0.2, 0.2, 0.2]))
        assert report_bad.status("F4") == "fail"

    def test_f4_incomparable_pair_skipped(self):
        # party 1 better alone, party 2 better with party 3: no direction
        g = make_table_game(
            3,
            {
                "1": 0.5, "2": 0.2, "3": 0.1,
                "1,2": 0.9, "1,3": 0.7, "2,3": 0.9,
                "1,2,3": 1.6,
            },
        )
        times = TimeVector.of((0, 0, 0))
        # pairs (1,3) and (2,3) do fire, so parties 1 and 2 must outearn 3
        report = check_static(g, times, np.array([0.6, 0.55, 0.3]))
        assert (1, 2) in report.checks["F4"].skipped
        assert report.status("F4") == "pass"

    def test_f5_useless_party(self):
        inner = random_superadditive_game(2, seed=4)
        g = Game(3, lambda mask: inner.value_mask(mask & 0b11))
        times = TimeVector.of((0, 1, 2))
        report = check_static(g, times, np.array([0.4, 0.4, 0.0]))
        assert report.checks["F5"].instances == 1
        assert report.status("F5") == "pass"
        report_bad = check_static(g, times, np.array([0.4, 0.4, 0.1]))
        assert report_bad.status("F5") == "fail"

    def test_preconditions_that_never_fire_pass(self, ir_counterexample, late_first):
        report = check_static(ir_counterexample, late_first, np.array([0.3, 0.3]))
        # different joining times: no equal-time pair exists
        assert report.checks["F3"].instances == 0
        assert report.status("F3") == "pass"
        assert report.checks["F5"].instances == 0

    def test_too_large(self):
        g = Game(25, lambda m: 0.0)
        with pytest.raises(TooLarge):
            check_static(g, TimeVector.of((0,) * 25), np.zeros(25))


class TestCheckTemporal:
    def test_late_party_moving_earlier_gains(self, ir_counterexample, late_first):
        scheme = time_valuation_scheme(1.0)
        report = check_temporal(ir_counterexample, late_first, scheme)
        assert report.status("F7") == "pass"
        assert report.status("F8") == "pass"
        assert report.checks["F7"].instances == 4  # t1' in {0,1,2,3}
        # moving t1 to 0 lifts the reward to plain Shapley
        moved = scheme(ir_counterexample, TimeVector.of((0, 0))).rewards
        assert moved[0] == pytest.approx(0.5, abs=1e-12)

    def test_useless_party_holds_with_equality(self):
        inner = random_superadditive_game(2, seed=4)
        table = np.array([inner.value_mask(mask & 0b11) for mask in range(8)])
        g = Game(3, lambda m: table[m], table=table)
        times = TimeVector.of((0, 0, 3))
        report = check_temporal(g, times, time_valuation_scheme(1.0))
        assert report.status("F7") == "pass"
        # useless party's reward is pinned at zero: F8 must not fire for it
        assert all(w[0] != 3 for w in report.checks["F8"].witnesses)

    @pytest.mark.parametrize("seed", range(4))
    def test_cumulation_beta_one_passes(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 6))
        g = random_superadditive_game(n, seed + 300)
        times = random_times(rng, n)
        report = check_temporal(g, times, cumulation_scheme(1.0))
        assert report.status("F7") == "pass"
        assert report.status("F8") == "pass"

    def test_zero_times_pass_vacuously(self, ir_counterexample):
        report = check_temporal(
            ir_counterexample, TimeVector.of((0, 0)), cumulation_scheme(1.0)
        )
        assert report.checks["F7"].instances == 0
        assert report.status("F7") == "pass"

    def test_plain_shapley_fails_strict_monotonicity(self, ir_counterexample, late_first):
        report = check_temporal(ir_counterexample, late_first, shapley_scheme())
        assert report.status("F7") == "pass"
        assert report.status("F8") == "fail"


class TestTimeBasedEqualValueDesirability:
    @pytest.mark.parametrize("seed", range(4))
    def test_earlier_symmetric_party_earns_at_least_as_much(self, seed):
        g = symmetric_pair_game(seed)
        times = TimeVector.of((1, 3, 0))  # party 1 earlier than its twin
        for scheme in (cumulation_scheme(1.0), time_valuation_scheme(1.0)):
            r = scheme(g, times).rewards
            assert r[0] >= r[1] - 1e-9


class TestFullReport:
    def test_merge_keeps_temporal_results(self, ir_counterexample, late_first):
        rewards, report = full_incentive_report(
            ir_counterexample, late_first, cumulation_scheme(1.0)
        )
        assert report.all_pass
        assert report.status("F7") == "pass"
        assert rewards.rewards == pytest.approx([0.26, 0.26])

    def test_naive_full_report_exits_with_failures(self, ir_counterexample, late_first):
        _, report = full_incentive_report(ir_counterexample, late_first, naive_scheme())
        assert "F2" in report.failures

    def test_to_dict_shape(self, ir_counterexample, late_first):
        _, report = full_incentive_report(
            ir_counterexample, late_first, cumulation_scheme(1.0)
        )
        doc = report.to_dict()
        assert set(doc) == {f"F{k}" for k in range(1, 9)}
        assert all("status" in v and "instances" in v for v in doc.values())


class TestWeakEfficiency:
    def test_scaled_rewards_reach_grand_value(self, ir_counterexample):
        from timereward import reward_cumulation

        rv = reward_cumulation(ir_counterexample, TimeVector.of((0, 0)), 1.0)
        scaled = scale_rewards(ir_counterexample, rv)
        assert check_weak_efficiency(ir_counterexample, scaled)

    def test_short_rewards_fail(self, ir_counterexample):
        assert not check_weak_efficiency(ir_counterexample, np.array([0.9, 0.8]))

    def test_single_party_game(self):
        g = make_table_game(1, {"1": 0.7})
        from timereward import RewardVector

        scaled = scale_rewards(g, RewardVector(np.array([0.7])))
        assert check_weak_efficiency(g, scaled)

    def test_nonzero_times_rejected(self, ir_counterexample, late_first):
        with pytest.raises(PreconditionViolated):
            check_weak_efficiency(
                ir_counterexample, np.array([1.0, 1.0]), times=late_first
            )
