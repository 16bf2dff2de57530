"""Turn target reward values into concrete model rewards.

Likelihood tempering raises the other parties' Gaussian likelihood to a
power kappa in [0, 1], which for a GP is equivalent to splitting each of
their observations into two virtual copies with noise sigma^2/kappa
(kept) and sigma^2/(1-kappa) (conditioned on).  The resulting value is
monotone in kappa, so bisection hits any in-range target.  Subset
selection instead adds shuffled points from the other parties until the
conditional value first exceeds the target; it works for any valuation
but is only approximate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TargetOutOfRange
from .games import Game
from .valuation import GpModel, gp_ig, information_gain, se_kernel

__all__ = [
    "TemperedReward",
    "SubsetReward",
    "tempered_value",
    "temper",
    "select_subset",
    "conditional_point_value",
]

_BISECT_MAX_ITER = 200
_KAPPA_FLOOR = 1e-14


@dataclass(frozen=True)
class TemperedReward:
    party: int
    kappa: float
    achieved_value: float
    target_value: float


@dataclass(frozen=True)
class SubsetReward:
    party: int
    selected: tuple[int, ...]
    achieved_value: float
    target_value: float
    seed: int
    saturated: bool = False


def tempered_value(model: GpModel, party: int, kappa: float) -> float:
    """Conditional value of party's data plus others' data tempered by kappa.

    Evaluates I(theta; D_i + R_i | R_-i) with the heteroscedastic
    information gain: the party's own points keep their noise, the
    others' points appear once at noise/kappa (kept) and once at
    noise/(1-kappa) (conditioning).  The kappa = 0 and 1 endpoints drop
    the infinitely noisy copy instead of dividing by zero.
    """
    if not 0.0 <= kappa <= 1.0:
        raise ValueError("kappa must lie in [0, 1]")
    own = model.points_of([party])
    others = model.points_of(
        p for p in range(1, model.n_parties + 1) if p != party
    )
    noise = model.noise_vector()

    if kappa == 0.0:
        kept_idx = own
        kept_noise = noise[own]
    else:
        kept_idx = np.concatenate([own, others])
        kept_noise = np.concatenate([noise[own], noise[others] / kappa])

    if kappa == 1.0:
        cond_idx = np.array([], dtype=int)
        cond_noise = np.array([])
    else:
        cond_idx = others
        cond_noise = noise[others] / (1.0 - kappa)

    joint_idx = np.concatenate([kept_idx, cond_idx])
    joint_noise = np.concatenate([kept_noise, cond_noise])
    K_joint = se_kernel(
        model.inputs[joint_idx], model.lengthscales, model.signal_variance
    )
    ig_joint = information_gain(K_joint, joint_noise)
    if len(cond_idx) == 0:
        return ig_joint
    K_cond = se_kernel(
        model.inputs[cond_idx], model.lengthscales, model.signal_variance
    )
    return ig_joint - information_gain(K_cond, cond_noise)


def temper(model: GpModel, party: int, target: float, tol: float = 1e-6) -> TemperedReward:
    """Bisect the tempering factor until the realized value hits the target.

    The objective is monotone non-decreasing in kappa, so plain bisection
    converges; it stops when the value is within tol of the target or
    the bracket width drops below 1e-14.
    """
    lo, hi = 0.0, 1.0
    lo_val = tempered_value(model, party, lo)
    hi_val = tempered_value(model, party, hi)
    if target < lo_val - tol or target > hi_val + tol:
        raise TargetOutOfRange(
            f"target {target:g} outside achievable [{lo_val:g}, {hi_val:g}]"
        )
    if abs(lo_val - target) <= tol:
        return TemperedReward(party, lo, lo_val, target)
    if abs(hi_val - target) <= tol:
        return TemperedReward(party, hi, hi_val, target)
    kappa, value = lo, lo_val
    for _ in range(_BISECT_MAX_ITER):
        kappa = 0.5 * (lo + hi)
        value = tempered_value(model, party, kappa)
        if abs(value - target) <= tol or hi - lo < _KAPPA_FLOOR:
            break
        if value < target:
            lo = kappa
        else:
            hi = kappa
    return TemperedReward(party, kappa, value, target)


def conditional_point_value(model: GpModel, point_indices) -> float:
    """Conditional information gain of a point set given all remaining points."""
    idx = np.asarray(list(point_indices), dtype=int)
    everything = np.arange(model.n_points)
    rest = np.setdiff1d(everything, idx)
    return gp_ig(model, everything) - gp_ig(model, rest)


def select_subset(source: Game | GpModel, party: int, target: float, seed: int) -> SubsetReward:
    """Greedily grow the party's data with shuffled donor atoms until the
    value first exceeds the target.

    With a GpModel the atoms are the other parties' individual points and
    the value is the conditional information gain of the selected set.
    With a Game the atoms are whole parties and the value is the game's.
    Deterministic per seed.  If even the full set only reaches the
    target, the result is flagged saturated.
    """
    if isinstance(source, GpModel):
        own = [int(k) for k in source.points_of([party])]
        donors = [
            int(k)
            for k in source.points_of(
                p for p in range(1, source.n_parties + 1) if p != party
            )
        ]

        def value(selected):
            return conditional_point_value(source, selected)

        total = value(own + donors)
    elif isinstance(source, Game):
        own = [party]
        donors = [p for p in range(1, source.n + 1) if p != party]

        def value(selected):
            return source.value(selected)

        total = source.grand_value()
    else:
        raise TypeError("source must be a Game or a GpModel")

    floor = value(own)
    if target < floor - 1e-12 or target > total + 1e-12:
        raise TargetOutOfRange(
            f"target {target:g} outside achievable [{floor:g}, {total:g}]"
        )

    rng = np.random.default_rng(seed)
    order = list(rng.permutation(len(donors)))
    selected = list(own)
    achieved = floor
    if achieved >= target:
        return SubsetReward(party, tuple(selected), achieved, target, seed)
    for pos in order:
        selected.append(donors[pos])
        achieved = value(selected)
        if achieved > target:
            return SubsetReward(party, tuple(selected), achieved, target, seed)
    return SubsetReward(party, tuple(selected), achieved, target, seed, saturated=True)
