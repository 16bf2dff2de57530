"""Coalition encoding, table games, axiom checks, random game generation."""

import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from timereward import (
    AxiomReport,
    Coalition,
    Game,
    InvalidCoalitionKey,
    LengthMismatch,
    MissingCoalition,
    RewardVector,
    TimeVector,
    TooLarge,
    check_axioms,
    load_game_json,
    make_table_game,
    random_superadditive_game,
    restrict_game,
    save_game_json,
)
from timereward.games import mask_of, members_of, subset_sums


class TestCoalition:
    def test_key_round_trip(self):
        c = Coalition.from_key("1,3", 4)
        assert c.members == (1, 3)
        assert c.key() == "1,3"
        assert Coalition.from_key("", 4).members == ()

    def test_of_canonicalizes(self):
        assert Coalition.of([3, 1, 3], 4).members == (1, 3)

    @pytest.mark.parametrize("bad", ["0", "5", "2,1", "1,1", "1,,2", "a", "1, b"])
    def test_malformed_keys(self, bad):
        with pytest.raises(InvalidCoalitionKey):
            Coalition.from_key(bad, 4)

    @given(mask=st.integers(min_value=0, max_value=(1 << 10) - 1))
    def test_bitmask_round_trip(self, mask):
        c = Coalition.from_mask(mask, 10)
        assert c.mask == mask
        assert mask_of(members_of(mask)) == mask

    def test_membership(self):
        c = Coalition.of([2, 4], 5)
        assert 2 in c and 4 in c and 3 not in c
        assert len(c) == 2

    def test_n_max_ceiling(self):
        with pytest.raises(TooLarge):
            Coalition.of([1], 25)


class TestTableGame:
    def test_two_party_example_game(self):
        g = make_table_game(2, {"1": 0.2, "2": 0.2, "1,2": 1.0})
        assert g.value([1, 2]) == 1.0
        assert g.value([1]) == 0.2
        assert g.value([]) == 0.0

    def test_single_party(self):
        g = make_table_game(1, {"1": 0.0})
        assert g.value_mask(0) == 0.0
        assert g.value([1]) == 0.0

    def test_full_three_party_table(self):
        values = {}
        rng = np.random.default_rng(0)
        for mask in range(1, 8):
            values[Coalition.from_mask(mask, 3).key()] = float(rng.uniform())
        g = make_table_game(3, values)
        for mask in range(8):
            expected = 0.0 if mask == 0 else values[Coalition.from_mask(mask, 3).key()]
            assert g.value_mask(mask) == expected

    def test_missing_coalition_raises_at_lookup(self):
        g = make_table_game(2, {"1": 0.1, "1,2": 1.0})
        assert g.value([1]) == 0.1
        with pytest.raises(MissingCoalition):
            g.value([2])

    def test_nonzero_empty_rejected(self):
        with pytest.raises(InvalidCoalitionKey):
            make_table_game(2, {"": 0.5, "1": 0.1, "2": 0.1, "1,2": 1.0})

    def test_empty_value_is_zero_without_oracle(self):
        calls = []

        def oracle(mask):
            calls.append(mask)
            return 1.0

        g = Game(2, oracle)
        assert g.value_mask(0) == 0.0
        assert calls == []

    def test_memoisation_is_idempotent(self):
        calls = []

        def oracle(mask):
            calls.append(mask)
            return float(mask)

        g = Game(3, oracle)
        for _ in range(3):
            assert g.value_mask(5) == 5.0
        assert calls == [5]

    def test_restrict_reuses_parent_values(self):
        g = random_superadditive_game(4, seed=1)
        sub, original = restrict_game(g, [2, 4])
        assert original == (2, 4)
        assert sub.n == 2
        assert sub.value([1]) == g.value([2])
        assert sub.value([2]) == g.value([4])
        assert sub.value([1, 2]) == g.value([2, 4])


class TestCheckAxioms:
    def test_all_pass_on_example_game(self, ir_counterexample):
        report = check_axioms(ir_counterexample, 1e-9)
        assert report == AxiomReport(True, True, True, {})
        assert report.all_ok

    def test_subadditive_witness(self):
        g = make_table_game(2, {"1": 0.6, "2": 0.6, "1,2": 1.0})
        report = check_axioms(g, 1e-9)
        assert report.nonneg and report.monotone
        assert not report.superadditive
        b, c = report.witnesses["superadditive"]
        assert {b.key(), c.key()} == {"1", "2"}

    def test_nonneg_and_monotone_witnesses(self):
        g = make_table_game(2, {"1": -0.5, "2": 0.4, "1,2": 0.1})
        report = check_axioms(g, 1e-9)
        assert not report.nonneg
        assert report.witnesses["nonneg"][0].key() == "1"
        assert not report.monotone
        sub, sup = report.witnesses["monotone"]
        assert set(sub.members) < set(sup.members)

    def test_monotone_pairs_not_just_single_steps(self):
        # v({2}) > v({1,2}) caught as a nested pair
        g = make_table_game(2, {"1": 0.0, "2": 0.5, "1,2": 0.3})
        assert not check_axioms(g, 1e-9).monotone

    def test_too_large(self):
        g = Game(25, lambda mask: 0.0)
        with pytest.raises(TooLarge):
            check_axioms(g)

    def test_report_cached_per_tolerance(self):
        g = random_superadditive_game(3, seed=2)
        assert check_axioms(g, 1e-9) is check_axioms(g, 1e-9)


class TestRandomSuperadditiveGame:
    @pytest.mark.parametrize("n,seed", [(1, 0), (2, 7), (3, 7), (5, 11), (6, 123)])
    def test_passes_axioms(self, n, seed):
        g = random_superadditive_game(n, seed)
        assert check_axioms(g, 1e-12).all_ok

    def test_single_party_nonnegative(self):
        assert random_superadditive_game(1, seed=3).value([1]) >= 0.0

    @given(seed=st.integers(min_value=0, max_value=10_000))
    def test_deterministic_per_seed(self, seed):
        a = random_superadditive_game(3, seed).table()
        b = random_superadditive_game(3, seed).table()
        assert np.array_equal(a, b)

    def test_different_seeds_differ(self):
        a = random_superadditive_game(4, 0).table()
        b = random_superadditive_game(4, 1).table()
        assert not np.array_equal(a, b)

    def test_subset_sums_matches_brute_force(self):
        rng = np.random.default_rng(5)
        d = rng.uniform(size=16)
        d[0] = 0.0
        table = subset_sums(d)
        for mask in range(16):
            brute = sum(d[s] for s in range(16) if s & mask == s)
            assert table[mask] == pytest.approx(brute, abs=1e-12)


class TestTimeVector:
    def test_normalize(self):
        assert TimeVector.of((5, 1, 3)).normalize().times == (4, 0, 2)

    def test_with_time(self):
        t = TimeVector.of((4, 0))
        assert t.with_time(1, 2).times == (2, 0)
        assert t.times == (4, 0)

    @pytest.mark.parametrize("bad", [(-1, 0), (0.5, 1)])
    def test_rejects_bad_entries(self, bad):
        with pytest.raises(ValueError):
            TimeVector(tuple(bad))

    @given(st.lists(st.integers(min_value=0, max_value=50), min_size=1, max_size=8))
    def test_normalized_minimum_is_zero(self, times):
        assert min(TimeVector.of(times).normalize().times) == 0


class TestRewardVector:
    def test_finite_required(self):
        with pytest.raises(ValueError):
            RewardVector(np.array([1.0, np.nan]))

    def test_fields(self):
        rv = RewardVector(np.array([0.5, 0.5]), scaled=np.array([1.0, 1.0]), rho=2.0)
        assert rv.n == 2
        assert rv.rho == 2.0
        assert not rv.degenerate


class TestGameJson:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "game.json"
        save_game_json(path, 2, {"1": 0.2, "2": 0.2, "1,2": 1.0}, times=(4, 0), superadditive=True)
        game, times = load_game_json(path)
        assert game.value([1, 2]) == 1.0
        assert times.times == (4, 0)
        assert game.declared_superadditive is True

    def test_times_normalized_on_load(self, tmp_path):
        path = tmp_path / "game.json"
        save_game_json(path, 2, {"1": 0.0, "2": 0.0, "1,2": 1.0}, times=(5, 1))
        _, times = load_game_json(path)
        assert times.times == (4, 0)

    def test_times_length_checked(self, tmp_path):
        path = tmp_path / "game.json"
        path.write_text(json.dumps({"n": 2, "values": {"1,2": 1.0}, "times": [0]}))
        with pytest.raises(LengthMismatch):
            load_game_json(path)
