"""The eight reward incentives as executable checks.

F1 non-negativity, F2 individual rationality, F3/F4 equal-time symmetry
and desirability, F5 uselessness, F6 necessity, F7/F8 time-based (strict)
monotonicity.  F7 and F8 recompute rewards counterfactually: every party
is moved to every earlier joining time, one at a time, and the reward
must not drop (F7) and must strictly rise when the party has genuine
synergy with its predecessors (F8).
"""

import numpy as np

import timereward as tr

rng = np.random.default_rng(42)
game = tr.random_superadditive_game(4, seed=7)
times = tr.TimeVector.of((2, 0, 3, 0))
print("game values v(i):", np.round(game.singleton_values(), 3), " v(N) =", round(game.grand_value(), 3))
print("joining times:", times.times)

for scheme in (tr.cumulation_scheme(1.0), tr.time_valuation_scheme(1.0), tr.naive_scheme()):
    rewards, report = tr.full_incentive_report(game, times, scheme)
    statuses = " ".join(f"{k}:{c.status[0]}" for k, c in sorted(report.checks.items()))
    print(f"\n{scheme.name:11s} rewards {np.round(rewards.rewards, 4)}")
    print(f"  {statuses}")
    if report.failures:
        for key in report.failures:
            print(f"  {key} witnesses: {report.checks[key].witnesses[:3]}")

print("\n--- the strictness predicate behind F8 ---")
for party in range(1, 5):
    fired = tr.strictness_predicate(game, times, party)
    print(f"party {party} (t={times[party - 1]}): synergy with predecessors -> {fired}")

print("\n--- counterfactual detail for the cumulation scheme ---")
scheme = tr.cumulation_scheme(1.0)
base = scheme(game, times).rewards
for party in (1, 3):
    for earlier in range(times[party - 1]):
        moved = scheme(game, times.with_time(party, earlier)).rewards
        print(
            f"party {party}: t {times[party - 1]} -> {earlier}: "
            f"reward {base[party - 1]:.4f} -> {moved[party - 1]:.4f}"
        )
