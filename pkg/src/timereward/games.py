"""Coalitions, cooperative games, joining times, and axiom checks.

Parties are numbered 1..n.  Internally a coalition is a bitmask: bit (i-1)
set means party i is a member.  Full tables are limited to n <= 24
(2**24 values, ~128 MB of floats).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import (
    InvalidCoalitionKey,
    LengthMismatch,
    MissingCoalition,
    TooLarge,
)

MAX_EXACT_PARTIES = 24

__all__ = [
    "MAX_EXACT_PARTIES",
    "Coalition",
    "Game",
    "TimeVector",
    "RewardVector",
    "AxiomReport",
    "make_table_game",
    "restrict_game",
    "random_superadditive_game",
    "check_axioms",
    "load_game_json",
    "save_game_json",
]


def mask_of(members: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based party indices."""
    m = 0
    for i in members:
        m |= 1 << (i - 1)
    return m


def members_of(mask: int) -> tuple[int, ...]:
    """Ascending 1-based party indices of a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Coalition:
    """An ascending set of 1-based party indices within an n-party game."""

    members: tuple[int, ...]
    n_max: int

    def __post_init__(self):
        if not 1 <= self.n_max <= MAX_EXACT_PARTIES:
            raise TooLarge(f"party count {self.n_max} outside [1, {MAX_EXACT_PARTIES}]")
        prev = 0
        for i in self.members:
            if not isinstance(i, int) or not 1 <= i <= self.n_max:
                raise InvalidCoalitionKey(f"party index {i!r} outside [1, {self.n_max}]")
            if i <= prev:
                raise InvalidCoalitionKey(f"indices not strictly ascending: {self.members}")
            prev = i

    @classmethod
    def of(cls, members: Iterable[int], n_max: int) -> "Coalition":
        return cls(tuple(sorted(set(members))), n_max)

    @classmethod
    def from_mask(cls, mask: int, n_max: int) -> "Coalition":
        return cls(members_of(mask), n_max)

    @classmethod
    def from_key(cls, key: str, n_max: int) -> "Coalition":
        """Parse the wire encoding: comma-separated ascending indices, "" for the empty set."""
        key = key.strip()
        if key == "":
            return cls((), n_max)
        parts = key.split(",")
        members = []
        for p in parts:
            p = p.strip()
            if not p.isdigit():
                raise InvalidCoalitionKey(f"malformed coalition key {key!r}")
            members.append(int(p))
        for a, b in zip(members, members[1:]):
            if b <= a:
                raise InvalidCoalitionKey(f"coalition key not strictly ascending: {key!r}")
        return cls(tuple(members), n_max)

    @property
    def mask(self) -> int:
        return mask_of(self.members)

    def key(self) -> str:
        return ",".join(str(i) for i in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, party: int) -> bool:
        return party in self.members


class Game:
    """An n-party coalition valuation with a memoised oracle.

    The oracle maps a coalition bitmask to a real value.  ``v(empty) = 0``
    is enforced without consulting the oracle.  Instances are immutable
    after construction apart from the value/axiom memo, whose fills are
    idempotent, so games are safe to share across threads.
    """

    def __init__(
        self,
        n: int,
        oracle: Callable[[int], float],
        *,
        table: np.ndarray | None = None,
        superadditive: bool | None = None,
    ):
        if n < 1:
            raise ValueError("party count must be >= 1")
        self.n = n
        self._oracle = oracle
        self._memo: dict[int, float] = {}
        self._table = None
        self.declared_superadditive = superadditive
        self._axiom_reports: dict[float, "AxiomReport"] = {}
        if table is not None:
            if len(table) != 1 << n:
                raise ValueError("table length must be 2**n")
            arr = np.ascontiguousarray(table, dtype=float)
            arr.flags.writeable = False
            self._table = arr

    @property
    def grand_mask(self) -> int:
        return (1 << self.n) - 1

    def value_mask(self, mask: int) -> float:
        """Value of the coalition given as a bitmask."""
        if mask == 0:
            return 0.0
        if self._table is not None:
            return float(self._table[mask])
        got = self._memo.get(mask)
        if got is None:
            got = float(self._oracle(mask))
            self._memo[mask] = got
        return got

    def value(self, coalition: "Coalition | Iterable[int]") -> float:
        """Value of a coalition given as a Coalition or iterable of indices."""
        if isinstance(coalition, Coalition):
            return self.value_mask(coalition.mask)
        return self.value_mask(mask_of(coalition))

    def grand_value(self) -> float:
        return self.value_mask(self.grand_mask)

    def singleton_values(self) -> np.ndarray:
        """Array of v({i}) for i = 1..n."""
        return np.array([self.value_mask(1 << i) for i in range(self.n)])

    def table(self) -> np.ndarray:
        """Full value table indexed by bitmask (read-only).

        Materialises lazily for oracle-backed games; raises TooLarge above
        the exact-enumeration ceiling and MissingCoalition for partial
        table games.
        """
        if self._table is None:
            if self.n > MAX_EXACT_PARTIES:
                raise TooLarge(f"cannot enumerate 2**{self.n} coalitions")
            arr = np.empty(1 << self.n)
            arr[0] = 0.0
            for mask in range(1, 1 << self.n):
                arr[mask] = self.value_mask(mask)
            arr.flags.writeable = False
            self._table = arr
        return self._table


def make_table_game(
    n: int, values: Mapping[str, float], *, superadditive: bool | None = None
) -> Game:
    """Build a game from a coalition-key -> value mapping.

    Parameters
    ----------
    n : int
        Party count.
    values : mapping
        Keys are wire-encoded coalitions ("1,3"; "" for the empty set).
        The empty coalition may be omitted or given as 0.  Lookups of
        unspecified non-empty coalitions raise MissingCoalition.
    superadditive : bool, optional
        Caller's declaration, recorded but not verified here.
    """
    if n < 1:
        raise ValueError("party count must be >= 1")
    by_mask: dict[int, float] = {}
    for key, val in values.items():
        coalition = Coalition.from_key(key, n)
        val = float(val)
        if coalition.mask == 0 and val != 0.0:
            raise InvalidCoalitionKey("empty coalition must have value 0")
        by_mask[coalition.mask] = val

    def oracle(mask: int) -> float:
        try:
            return by_mask[mask]
        except KeyError:
            raise MissingCoalition(
                f"coalition {Coalition.from_mask(mask, n).key()!r} not in table"
            ) from None

    return Game(n, oracle, superadditive=superadditive)


def restrict_game(game: Game, members: Iterable[int]) -> tuple[Game, tuple[int, ...]]:
    """Restrict a game to a subset of its parties.

    Returns the restricted game (parties renumbered 1..k in ascending
    order of the original indices) together with the original indices.
    Values are read through the parent game, so its cache is reused.
    """
    members = tuple(sorted(set(members)))
    bits = [1 << (i - 1) for i in members]

    def oracle(sub_mask: int) -> float:
        parent = 0
        j = 0
        while sub_mask:
            if sub_mask & 1:
                parent |= bits[j]
            sub_mask >>= 1
            j += 1
        return game.value_mask(parent)

    return Game(len(members), oracle, superadditive=game.declared_superadditive), members


def subset_sums(addends: np.ndarray) -> np.ndarray:
    """For per-dividend values d indexed by mask, return sums over subsets.

    out[mask] = sum of d[T] over T subset of mask (the zeta transform).
    """
    out = np.array(addends, dtype=float)
    n = int(np.log2(len(out)))
    if 1 << n != len(out):
        raise ValueError("length must be a power of two")
    for i in range(n):
        bit = 1 << i
        has = (np.arange(len(out)) & bit).astype(bool)
        out[has] += out[np.arange(len(out))[has] ^ bit]
    return out


def random_superadditive_game(n: int, seed: int) -> Game:
    """Draw a random non-negative superadditive game, deterministic per seed.

    Non-negative Harsanyi dividends are drawn for every non-empty
    coalition and summed over subsets, which guarantees non-negativity,
    monotonicity, and superadditivity of the synthesized values.
    """
    if not 1 <= n <= MAX_EXACT_PARTIES:
        raise TooLarge(f"party count {n} outside [1, {MAX_EXACT_PARTIES}]")
    rng = np.random.default_rng(seed)
    dividends = rng.uniform(0.0, 1.0, size=1 << n)
    dividends[0] = 0.0
    table = subset_sums(dividends)
    return Game(n, lambda mask: table[mask], table=table, superadditive=True)


@dataclass(frozen=True)
class TimeVector:
    """Per-party non-negative integer joining times."""

    times: tuple[int, ...]

    def __post_init__(self):
        for t in self.times:
            if not isinstance(t, int) or t < 0:
                raise ValueError(f"joining times must be non-negative integers, got {t!r}")

    @classmethod
    def of(cls, times: Iterable[int]) -> "TimeVector":
        return cls(tuple(int(t) for t in times))

    @property
    def n(self) -> int:
        return len(self.times)

    @property
    def max_time(self) -> int:
        return max(self.times)

    def normalize(self) -> "TimeVector":
        """Shift so the earliest party has time 0."""
        lo = min(self.times)
        return TimeVector(tuple(t - lo for t in self.times))

    def with_time(self, party: int, t: int) -> "TimeVector":
        """Copy with party's (1-based) time replaced; used for counterfactuals."""
        out = list(self.times)
        out[party - 1] = int(t)
        return TimeVector(tuple(out))

    def as_array(self) -> np.ndarray:
        return np.array(self.times, dtype=int)

    def __len__(self) -> int:
        return len(self.times)

    def __getitem__(self, idx: int) -> int:
        return self.times[idx]


@dataclass(frozen=True, eq=False)
class RewardVector:
    """Per-party reward values, optionally with scaled values r*."""

    rewards: np.ndarray
    scaled: np.ndarray | None = None
    rho: float | None = None
    degenerate: bool = False

    def __post_init__(self):
        arr = np.asarray(self.rewards, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise ValueError("rewards must be finite")
        object.__setattr__(self, "rewards", arr)
        if self.scaled is not None:
            sarr = np.asarray(self.scaled, dtype=float)
            if not np.all(np.isfinite(sarr)):
                raise ValueError("scaled rewards must be finite")
            object.__setattr__(self, "scaled", sarr)

    @property
    def n(self) -> int:
        return len(self.rewards)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the enumerative A1/A2/A3 check with failure witnesses."""

    nonneg: bool
    monotone: bool
    superadditive: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def all_ok(self) -> bool:
        return self.nonneg and self.monotone and self.superadditive

    def to_dict(self) -> dict:
        return {
            "nonneg": self.nonneg,
            "monotone": self.monotone,
            "superadditive": self.superadditive,
            "witnesses": {
                k: [c.key() for c in v] for k, v in self.witnesses.items()
            },
        }


def check_axioms(game: Game, tol: float = 1e-9) -> AxiomReport:
    """Verify non-negativity, monotonicity, and superadditivity by full enumeration.

    Each axiom's quantifier is enumerated literally (pairs of nested /
    disjoint coalitions), so the cost is O(3**n).  On failure the worst
    violating coalition pair is returned as a witness.  Results are
    memoised on the game per tolerance.
    """
    if game.n > MAX_EXACT_PARTIES:
        raise TooLarge(f"cannot enumerate axioms for n={game.n}")
    cached = game._axiom_reports.get(tol)
    if cached is not None:
        return cached

    n = game.n
    v = game.table()
    full = (1 << n) - 1
    witnesses: dict[str, tuple[Coalition, ...]] = {}

    worst_mask = int(np.argmin(v))
    nonneg = v[worst_mask] >= -tol
    if not nonneg:
        witnesses["nonneg"] = (Coalition.from_mask(worst_mask, n),)

    worst_gap = tol
    worst_pair = None
    for c_mask in range(1, full + 1):
        vc = v[c_mask]
        sub = (c_mask - 1) & c_mask
        while sub:
            gap = v[sub] - vc
            if gap > worst_gap:
                worst_gap = gap
                worst_pair = (sub, c_mask)
            sub = (sub - 1) & c_mask
        # B = empty: v(C) >= 0 already covered by nonneg
    monotone = worst_pair is None
    if not monotone:
        witnesses["monotone"] = (
            Coalition.from_mask(worst_pair[0], n),
            Coalition.from_mask(worst_pair[1], n),
        )

    worst_gap = tol
    worst_pair = None
    for b_mask in range(1, full + 1):
        comp = full ^ b_mask
        vb = v[b_mask]
        sub = comp
        while sub:
            if sub > b_mask:  # each unordered pair once
                gap = vb + v[sub] - v[b_mask | sub]
                if gap > worst_gap:
                    worst_gap = gap
                    worst_pair = (b_mask, sub)
            sub = (sub - 1) & comp
    superadditive = worst_pair is None
    if not superadditive:
        witnesses["superadditive"] = (
            Coalition.from_mask(worst_pair[0], n),
            Coalition.from_mask(worst_pair[1], n),
        )

    report = AxiomReport(bool(nonneg), monotone, superadditive, witnesses)
    game._axiom_reports[tol] = report
    return report


def load_game_json(path) -> tuple[Game, TimeVector | None]:
    """Read a game file: {"n", "values", "times"?, "superadditive"?}.

    Times, when present, are normalized so the earliest party is at 0.
    """
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "n" not in doc or "values" not in doc:
        raise InvalidCoalitionKey("game file must contain 'n' and 'values'")
    n = int(doc["n"])
    game = make_table_game(n, doc["values"], superadditive=doc.get("superadditive"))
    times = None
    if doc.get("times") is not None:
        raw = doc["times"]
        if len(raw) != n:
            raise LengthMismatch(f"expected {n} times, got {len(raw)}")
        times = TimeVector.of(raw).normalize()
    return game, times


def save_game_json(path, n: int, values: Mapping[str, float], times=None, superadditive=None):
    doc: dict = {"n": n, "values": {k: float(v) for k, v in values.items()}}
    if times is not None:
        doc["times"] = [int(t) for t in times]
    if superadditive is not None:
        doc["superadditive"] = bool(superadditive)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")

