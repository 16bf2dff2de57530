"""Why dividing Shapley values by joining time backfires.

Two parties share data; party 1 joins four intervals late.  Dividing
each party's Shapley value by (t + 1) punishes the late party so hard
that its reward drops below the value of its own data in one game and
breaks the equal treatment of mutually necessary parties in another.
"""

import timereward as tr

late_first = tr.TimeVector.of((4, 0))

print("=== Game A: each party worth 0.2 alone, 1.0 together ===")
game_a = tr.make_table_game(2, {"1": 0.2, "2": 0.2, "1,2": 1.0})
print("Shapley values:", tr.shapley_exact(game_a).values)

rewards = tr.naive_time_division(game_a, late_first)
print("naive time-divided rewards:", rewards.rewards)
print(f"party 1 gets {rewards.rewards[0]:.3f} < its solo value {game_a.value([1])}")

report = tr.check_static(game_a, late_first, rewards)
print("individual rationality (F2):", report.status("F2"), report.checks["F2"].witnesses)

print()
print("=== Game B: worthless alone, 1.0 together (mutually necessary) ===")
game_b = tr.make_table_game(2, {"1": 0.0, "2": 0.0, "1,2": 1.0})
rewards_b = tr.naive_time_division(game_b, late_first)
print("naive rewards:", rewards_b.rewards, "(necessary parties should earn equally)")
report_b = tr.check_static(game_b, late_first, rewards_b)
print("necessity (F6):", report_b.status("F6"), report_b.checks["F6"].witnesses)

print()
print("=== The time-aware schemes keep every incentive ===")
for scheme in (tr.cumulation_scheme(1.0), tr.time_valuation_scheme(1.0)):
    r, full = tr.full_incentive_report(game_a, late_first, scheme)
    print(f"{scheme.name:11s} rewards {r.rewards}  failures: {full.failures or 'none'}")
