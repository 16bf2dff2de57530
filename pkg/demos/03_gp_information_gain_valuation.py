"""Valuing coalitions by Gaussian-process information gain.

Each party owns a few design points.  A coalition's value is the
information its points add about the latent function given everyone
else's points: IG(all points) - IG(the complement's points).  This
"conditional" form is the dual of the plain information gain, inherits
non-negativity, monotonicity, and superadditivity, and shares its
Shapley values with the plain form.
"""

import numpy as np

import timereward as tr

rng = np.random.default_rng(0)
X = rng.uniform(size=(12, 2))
ownership = np.repeat([1, 2, 3], 4)
model = tr.GpModel(
    inputs=X,
    ownership=ownership,
    lengthscales=np.array([0.5, 0.5]),
    signal_variance=1.0,
    noise_variance=0.1,
)

print("plain IG of each party's own points:")
plain = tr.ig_game(model)
for party in (1, 2, 3):
    print(f"  party {party}: {plain.value([party]):.4f}")

cond = tr.conditional_ig_game(model)
print("\nconditional IG game (value given the others' data):")
for mask in range(1, 8):
    c = tr.Coalition.from_mask(mask, 3)
    print(f"  v({c.key():5s}) = {cond.value_mask(mask):.4f}")

print("\naxiom check:", tr.check_axioms(cond, 1e-8))

dual = tr.dual_game(plain)
diff = max(abs(cond.value_mask(m) - dual.value_mask(m)) for m in range(8))
print(f"conditional IG equals the dual of plain IG (max diff {diff:.1e})")

phi_plain = tr.shapley_exact(plain).values
phi_cond = tr.shapley_exact(cond).values
print("Shapley of plain IG:      ", np.round(phi_plain, 4))
print("Shapley of conditional IG:", np.round(phi_cond, 4))
print("identical:", np.max(np.abs(phi_plain - phi_cond)) < 1e-9)

print("\nrewards when party 1 is three intervals late:")
times = tr.TimeVector.of((3, 0, 0))
for scheme in (tr.cumulation_scheme(1.0), tr.time_valuation_scheme(0.5)):
    rewards = scheme(cond, times)
    scaled = tr.scale_rewards(cond, rewards)
    print(f"  {scheme.name:11s} r={np.round(rewards.rewards, 4)} r*={np.round(scaled.scaled, 4)}")
