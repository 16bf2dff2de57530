"""Exact and Monte-Carlo Shapley values, plus the naive time-division baseline.

The exact path iterates the 2**n coalition values once, crediting each
value v(S) to every party with the appropriate combinatorial weight, for
an overall O(n 2**n) cost.  The Monte-Carlo path is the unbiased
permutation-sampling estimator: each sampled permutation credits every
party its marginal contribution over its predecessors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import TooLarge
from .games import MAX_EXACT_PARTIES, Game, RewardVector, TimeVector

__all__ = ["ShapleyResult", "shapley_exact", "shapley_mc", "naive_time_division"]

_LOGSPACE_THRESHOLD = 20


@dataclass(frozen=True, eq=False)
class ShapleyResult:
    """Per-party Shapley values and how they were obtained."""

    values: np.ndarray
    method: str  # "exact" | "monte_carlo"
    permutations_used: int | None = None
    std_error: np.ndarray | None = None


def _size_weights(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients of v(S) in phi_i, indexed by |S|.

    w_member[s] applies when i is in S (from the marginal onto S \\ {i}),
    w_other[s] is subtracted when i is outside S.  For n above
    _LOGSPACE_THRESHOLD the factorial ratios are evaluated via lgamma to
    avoid forming huge integers.
    """
    w_member = np.zeros(n + 1)
    w_other = np.zeros(n + 1)
    if n <= _LOGSPACE_THRESHOLD:
        fact = [math.factorial(k) for k in range(n + 1)]
        for s in range(1, n + 1):
            w_member[s] = fact[s - 1] * fact[n - s] / fact[n]
        for s in range(n):
            w_other[s] = fact[s] * fact[n - s - 1] / fact[n]
    else:
        lf = [math.lgamma(k + 1) for k in range(n + 1)]
        for s in range(1, n + 1):
            w_member[s] = math.exp(lf[s - 1] + lf[n - s] - lf[n])
        for s in range(n):
            w_other[s] = math.exp(lf[s] + lf[n - s - 1] - lf[n])
    return w_member, w_other


def shapley_exact(game: Game) -> ShapleyResult:
    """Shapley values by full coalition enumeration with exact weights (n <= 24)."""
    n = game.n
    if n > MAX_EXACT_PARTIES:
        raise TooLarge(f"exact Shapley needs n <= {MAX_EXACT_PARTIES}, got {n}")
    v = game.table()
    masks = np.arange(1 << n, dtype=np.uint32)
    sizes = np.bitwise_count(masks).astype(np.int64)
    w_member, w_other = _size_weights(n)
    in_coeff = w_member[sizes]
    out_coeff = w_other[sizes]
    values = np.empty(n)
    for i in range(n):
        member = (masks >> i) & 1
        coeff = np.where(member, in_coeff, -out_coeff)
        values[i] = float(np.dot(coeff, v))
    return ShapleyResult(values=values, method="exact")


def _sample_permutations(n: int, m: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    perms = np.tile(np.arange(n), (m, 1))
    rng.permuted(perms, axis=1, out=perms)
    return perms


def shapley_mc(game: Game, permutations: int, seed: int) -> ShapleyResult:
    """Permutation-sampling Shapley estimate, deterministic per seed.

    Reports the per-party standard error from the sample variance of the
    marginal contributions.  For additive games every permutation yields
    the same marginals, so the estimate is exact with zero error.

    Games with a materialised table are evaluated vectorised; oracle
    games are evaluated through the memo cache so only visited prefixes
    are computed.  Both paths accumulate in the same order and return
    identical results.
    """
    if permutations < 1:
        raise ValueError("permutations must be >= 1")
    n = game.n
    m = int(permutations)
    perms = _sample_permutations(n, m, seed)
    sums = np.zeros(n)
    sumsq = np.zeros(n)
    table = game._table
    cur_mask = np.zeros(m, dtype=np.int64)
    prev = np.zeros(m)
    for k in range(n):
        p = perms[:, k]
        cur_mask |= np.int64(1) << p
        if table is not None:
            cur = table[cur_mask]
        else:
            cur = np.array([game.value_mask(int(mask)) for mask in cur_mask])
        marginal = cur - prev
        np.add.at(sums, p, marginal)
        np.add.at(sumsq, p, marginal * marginal)
        prev = cur
    values = sums / m
    if m > 1:
        var = np.maximum(sumsq - m * values * values, 0.0) / (m - 1)
        std_error = np.sqrt(var / m)
    else:
        std_error = np.zeros(n)
    return ShapleyResult(
        values=values, method="monte_carlo", permutations_used=m, std_error=std_error
    )


def naive_time_division(game: Game, times: TimeVector) -> RewardVector:
    """The counterexample baseline: phi_i / (t_i + 1).

    Provided only to demonstrate how dividing by joining time breaks
    individual rationality and necessity; not a recommended scheme.
    """
    if len(times) != game.n:
        raise ValueError("times length must equal the party count")
    phi = shapley_exact(game).values
    return RewardVector(phi / (times.as_array() + 1.0))
