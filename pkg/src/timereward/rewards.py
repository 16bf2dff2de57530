"""Time-aware reward schemes: interval cumulation and time-aware valuation.

Both schemes require a non-negative, superadditive game (checked
enumeratively and memoised on the game).  Interval cumulation evaluates
a per-interval Shapley value on the restriction of the game to the
parties present and combines the intervals with normalized geometric
weights.  Time-aware valuation discounts each coalition's synergy
dividend by the cooperative ability exp(-gamma * t) of its latest
member, then rewards with the Shapley value of the modified game.
"""

from __future__ import annotations

import numpy as np

from .errors import AxiomViolation, TooLarge
from .games import (
    MAX_EXACT_PARTIES,
    Coalition,
    Game,
    RewardVector,
    TimeVector,
    check_axioms,
    restrict_game,
)
from .shapley import shapley_exact

__all__ = [
    "interval_weights",
    "interval_shapley_values",
    "reward_cumulation",
    "reward_cumulation_via_linearity",
    "harsanyi_dividends",
    "time_aware_value",
    "time_aware_value_from_dividends",
    "time_aware_game",
    "reward_time_valuation",
    "scale_rewards",
]

# exp(-gamma*t) clamps here instead of underflowing to 0, keeping every
# cooperative ability strictly positive
_ABILITY_FLOOR = float(np.finfo(float).tiny)


def _validate_inputs(game: Game, times: TimeVector):
    if len(times) != game.n:
        raise ValueError(f"times has {len(times)} entries for an n={game.n} game")
    if game.n > MAX_EXACT_PARTIES:
        raise TooLarge(f"exact reward schemes need n <= {MAX_EXACT_PARTIES}")


def _require_axioms(game: Game, tol: float = 1e-9):
    report = check_axioms(game, tol)
    if not (report.nonneg and report.superadditive):
        bad = [k for k, ok in (("A1", report.nonneg), ("A3", report.superadditive)) if not ok]
        raise AxiomViolation(
            f"game fails {'+'.join(bad)}; witnesses: "
            f"{ {k: [c.key() for c in w] for k, w in report.witnesses.items()} }"
        )


def interval_weights(times: TimeVector, beta: float) -> np.ndarray:
    """Normalized geometric interval weights w(tau) = beta**tau / sum.

    Evaluated in log space so large beta or long horizons cannot
    overflow.  The weights sum to 1 and are strictly geometric in tau.
    """
    if not beta > 0 or not np.isfinite(beta):
        raise ValueError("beta must be positive and finite")
    horizon = times.max_time
    logs = np.arange(horizon + 1) * np.log(beta)
    logs -= logs.max()
    w = np.exp(logs)
    return w / w.sum()


def _presence_masks(times: TimeVector) -> list[int]:
    """Bitmask of parties present at each interval 0..T."""
    horizon = times.max_time
    return [
        sum(1 << i for i, t in enumerate(times.times) if t <= tau)
        for tau in range(horizon + 1)
    ]


def interval_shapley_values(game: Game, times: TimeVector) -> np.ndarray:
    """Per-interval Shapley values, shape (T+1, n).

    Row tau holds each party's Shapley value in the game restricted to
    the parties present at interval tau; parties not yet present stand
    in with their solo value.
    """
    _validate_inputs(game, times)
    singles = game.singleton_values()
    rows = []
    phi_cache: dict[int, np.ndarray] = {}
    for n_mask in _presence_masks(times):
        phi_vec = phi_cache.get(n_mask)
        if phi_vec is None:
            phi_vec = singles.copy()
            if n_mask:
                members = [i + 1 for i in range(game.n) if n_mask >> i & 1]
                sub, original = restrict_game(game, members)
                sub_phi = shapley_exact(sub).values
                for j, party in enumerate(original):
                    phi_vec[party - 1] = sub_phi[j]
            phi_cache[n_mask] = phi_vec
        rows.append(phi_vec)
    return np.array(rows)


def reward_cumulation(game: Game, times: TimeVector, beta: float) -> RewardVector:
    """Interval-cumulated rewards r_i = sum_tau w(tau) * phi_i(tau).

    Each interval is treated as a separate collaboration among the
    parties present; the geometric weights trade off early against late
    intervals.  Requires a non-negative superadditive game.
    """
    _validate_inputs(game, times)
    _require_axioms(game)
    weights = interval_weights(times, beta)
    per_interval = interval_shapley_values(game, times)
    return RewardVector(weights @ per_interval)


def reward_cumulation_via_linearity(
    game: Game, times: TimeVector, beta: float
) -> RewardVector:
    """Interval cumulation evaluated as one Shapley computation.

    Builds the single mixed game nu(C) = sum_tau w(tau) * [v(C cap N_tau)
    + sum of solo values of C's not-yet-present members] and takes its
    Shapley value.  Agrees with reward_cumulation by linearity.
    """
    _validate_inputs(game, times)
    _require_axioms(game)
    weights = interval_weights(times, beta)
    n = game.n
    v = game.table()
    singles = game.singleton_values()
    all_masks = np.arange(1 << n)

    solo_sum = np.zeros(1 << n)
    for i in range(n):
        has = (all_masks >> i & 1).astype(bool)
        solo_sum[has] += singles[i]

    mixed = np.zeros(1 << n)
    for tau, n_mask in enumerate(_presence_masks(times)):
        inside = all_masks & n_mask
        outside = all_masks & ~n_mask
        mixed += weights[tau] * (v[inside] + solo_sum[outside])
    mixed[0] = 0.0
    blended = Game(n, lambda mask: mixed[mask], table=mixed)
    return RewardVector(shapley_exact(blended).values)


_MAX_DIVIDEND_PARTIES = 12


def dividend_table(game: Game) -> np.ndarray:
    """Harsanyi dividends for every coalition, indexed by bitmask.

    Computed by the defining recursion d(T) = v(T) - sum of d over proper
    subsets, iterating masks in ascending order (subsets precede
    supersets numerically).  O(3**n); capped at n = 12.
    """
    if game.n > _MAX_DIVIDEND_PARTIES:
        raise TooLarge(f"dividend recursion is capped at n <= {_MAX_DIVIDEND_PARTIES}")
    v = game.table()
    d = np.zeros(1 << game.n)
    for mask in range(1, 1 << game.n):
        acc = 0.0
        sub = (mask - 1) & mask
        while sub:
            acc += d[sub]
            sub = (sub - 1) & mask
        d[mask] = v[mask] - acc
    return d


def harsanyi_dividends(game: Game) -> dict[Coalition, float]:
    """Map every coalition to its synergy dividend d(v, T)."""
    d = dividend_table(game)
    return {
        Coalition.from_mask(mask, game.n): float(d[mask]) for mask in range(1 << game.n)
    }


def cooperative_abilities(times: TimeVector, gamma: float) -> np.ndarray:
    """Per-party abilities exp(-gamma * t_i), floored at the tiniest normal float."""
    if gamma < 0 or not np.isfinite(gamma):
        raise ValueError("gamma must be non-negative and finite")
    lam = np.exp(-gamma * times.as_array().astype(float))
    return np.maximum(lam, _ABILITY_FLOOR)


def time_aware_value(
    game: Game, times: TimeVector, gamma: float, coalition: Coalition
) -> float:
    """Time-aware value of one coalition via the sorted-weights identity.

    Members are ranked by joining time; each prefix of earliest members
    contributes the drop between consecutive sorted abilities, and each
    member's solo value tops up its ability deficit.  Sums only |C|
    terms per sum, and equals the dividend-discounted definition.
    """
    _validate_inputs(game, times)
    lam = cooperative_abilities(times, gamma)
    members = sorted(coalition.members, key=lambda i: (times[i - 1], i))
    if not members:
        return 0.0
    abilities = [lam[i - 1] for i in members] + [0.0]
    total = 0.0
    prefix_mask = 0
    for j, party in enumerate(members):
        prefix_mask |= 1 << (party - 1)
        total += game.value_mask(prefix_mask) * (abilities[j] - abilities[j + 1])
        total += (1.0 - abilities[j]) * game.value_mask(1 << (party - 1))
    return total


def time_aware_value_from_dividends(
    game: Game, times: TimeVector, gamma: float, coalition: Coalition
) -> float:
    """Reference evaluation straight from the dividend definition.

    Sums d(v, T) * min ability over T for every multi-member T inside the
    coalition plus the members' solo dividends.  Used to cross-check the
    sorted-weights identity; capped at n = 12 by the dividend recursion.
    """
    _validate_inputs(game, times)
    lam = cooperative_abilities(times, gamma)
    d = dividend_table(game)
    c_mask = coalition.mask
    total = 0.0
    sub = c_mask
    while sub:
        size = int(sub).bit_count()
        if size >= 2:
            m = min(lam[i - 1] for i in Coalition.from_mask(sub, game.n).members)
            total += d[sub] * m
        else:
            total += d[sub]
        sub = (sub - 1) & c_mask
    return total


def time_aware_game(game: Game, times: TimeVector, gamma: float) -> Game:
    """Full time-aware game built with the sorted-weights identity."""
    _validate_inputs(game, times)
    n = game.n
    table = np.zeros(1 << n)
    for mask in range(1, 1 << n):
        table[mask] = time_aware_value(game, times, gamma, Coalition.from_mask(mask, n))
    return Game(n, lambda m: table[m], table=table, superadditive=game.declared_superadditive)


def reward_time_valuation(game: Game, times: TimeVector, gamma: float) -> RewardVector:
    """Rewards as Shapley values of the time-aware game.

    Requires a non-negative superadditive base game; the modified game
    then inherits both properties, which keeps individual rationality.
    """
    _validate_inputs(game, times)
    _require_axioms(game)
    modified = time_aware_game(game, times, gamma)
    return RewardVector(shapley_exact(modified).values)


def scale_rewards(game: Game, rewards: RewardVector) -> RewardVector:
    """Scale rewards by rho = v(N) / max plain Shapley value.

    With all joining times zero this makes the best party's scaled
    reward exactly v(N) (weak efficiency).  If every reward is zero or
    the game itself is null, scaling is undefined: the rewards are
    returned unchanged with the degenerate flag set.
    """
    phi = shapley_exact(game).values
    top = float(phi.max())
    r = rewards.rewards
    if top <= 0.0 or not np.any(r != 0.0):
        return RewardVector(r, scaled=r.copy(), rho=None, degenerate=True)
    rho = game.grand_value() / top
    return RewardVector(r, scaled=rho * r, rho=rho)
