"""Valuation functions: Gaussian-process information gain and duals.

The conditional information gain of a coalition is the entropy drop of
the latent function from that coalition's points, given everybody
else's: IG(all points) - IG(points of the complement).  It is the dual
of the plain information gain, which is monotone submodular, so it is
non-negative, monotone, and superadditive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np
import scipy.linalg

from .errors import NumericalFailure, TooLarge
from .games import MAX_EXACT_PARTIES, Game
from .synthdata import Dataset, PredictiveDistribution

__all__ = [
    "GpModel",
    "DualGame",
    "se_kernel",
    "gp_ig",
    "information_gain",
    "ig_game",
    "conditional_ig_game",
    "dual_game",
    "gp_predict",
    "make_gp_model",
    "load_gp_config",
]

_JITTER_START = 1e-8
_JITTER_LIMIT = 1e-2


@dataclass(frozen=True, eq=False)
class GpModel:
    """Squared-exponential GP over a fixed design matrix with party ownership.

    noise_variance may be a scalar (homoscedastic) or a per-point vector.
    Hyperparameters are configuration inputs and are never optimized.
    """

    inputs: np.ndarray
    ownership: np.ndarray
    lengthscales: np.ndarray
    signal_variance: float
    noise_variance: float | np.ndarray

    def __post_init__(self):
        X = np.asarray(self.inputs, dtype=float)
        own = np.asarray(self.ownership, dtype=int)
        ls = np.asarray(self.lengthscales, dtype=float)
        if X.ndim != 2:
            raise ValueError("inputs must be a 2-d design matrix")
        if len(own) != len(X):
            raise ValueError("ownership must assign every design point")
        if np.any(own < 1):
            raise ValueError("ownership indices are 1-based")
        if ls.shape != (X.shape[1],) or np.any(ls <= 0):
            raise ValueError("need one strictly positive lengthscale per feature")
        if not self.signal_variance > 0:
            raise ValueError("signal_variance must be positive")
        noise = np.asarray(self.noise_variance, dtype=float)
        if noise.ndim == 0:
            if not noise > 0:
                raise ValueError("noise_variance must be positive")
        elif noise.shape != (len(X),) or np.any(noise <= 0):
            raise ValueError("per-point noise needs one positive entry per point")
        if int(own.max()) > MAX_EXACT_PARTIES:
            raise TooLarge(f"party count {own.max()} exceeds {MAX_EXACT_PARTIES}")
        object.__setattr__(self, "inputs", X)
        object.__setattr__(self, "ownership", own)
        object.__setattr__(self, "lengthscales", ls)
        object.__setattr__(self, "signal_variance", float(self.signal_variance))

    @property
    def n_points(self) -> int:
        return len(self.inputs)

    @property
    def n_parties(self) -> int:
        return int(self.ownership.max())

    def noise_vector(self) -> np.ndarray:
        noise = np.asarray(self.noise_variance, dtype=float)
        if noise.ndim == 0:
            return np.full(self.n_points, float(noise))
        return noise

    def points_of(self, parties: Iterable[int]) -> np.ndarray:
        """0-based indices of the points owned by the given parties."""
        wanted = set(parties)
        return np.flatnonzero(np.isin(self.ownership, sorted(wanted)))

    def points_of_mask(self, mask: int) -> np.ndarray:
        return self.points_of(i + 1 for i in range(self.n_parties) if mask >> i & 1)


def se_kernel(
    X: np.ndarray,
    lengthscales: np.ndarray,
    signal_variance: float,
    Y: np.ndarray | None = None,
) -> np.ndarray:
    """Squared-exponential kernel matrix with per-dimension lengthscales."""
    A = np.asarray(X, dtype=float) / lengthscales
    B = A if Y is None else np.asarray(Y, dtype=float) / lengthscales
    sq = (
        np.sum(A * A, axis=1)[:, None]
        + np.sum(B * B, axis=1)[None, :]
        - 2.0 * A @ B.T
    )
    return signal_variance * np.exp(-0.5 * np.maximum(sq, 0.0))


def _robust_cholesky(mat: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor with escalating relative jitter.

    Starts jitter-free; on failure adds 1e-8 * mean(diag) and escalates
    by 10x up to 1e-2 * mean(diag) before giving up.
    """
    try:
        return scipy.linalg.cholesky(mat, lower=True)
    except scipy.linalg.LinAlgError:
        pass
    scale = float(np.mean(np.diag(mat)))
    if not np.isfinite(scale) or scale <= 0:
        raise NumericalFailure("matrix diagonal is not positive")
    jitter = _JITTER_START
    eye = np.eye(len(mat))
    while jitter <= _JITTER_LIMIT:
        try:
            return scipy.linalg.cholesky(mat + jitter * scale * eye, lower=True)
        except scipy.linalg.LinAlgError:
            jitter *= 10.0
    raise NumericalFailure(
        f"Cholesky failed even with jitter {_JITTER_LIMIT:g} * mean diagonal"
    )


def information_gain(K: np.ndarray, noise: np.ndarray) -> float:
    """0.5 * log det(I + Knoise^-1 K) for one covariance/noise pair.

    Evaluated on the symmetrized form I + D^-1/2 K D^-1/2 via Cholesky;
    the log-determinant is the sum of the log factor diagonal, which
    cannot overflow.
    """
    if len(K) == 0:
        return 0.0
    inv_sqrt = 1.0 / np.sqrt(noise)
    B = np.eye(len(K)) + inv_sqrt[:, None] * K * inv_sqrt[None, :]
    L = _robust_cholesky(B)
    return float(np.sum(np.log(np.diag(L))))


def gp_ig(model: GpModel, point_set) -> float:
    """Information gain of the GP from the given design-point indices.

    The empty set yields exactly 0.  Heteroscedastic noise is handled by
    scaling each point by its own noise variance.
    """
    idx = np.asarray(list(point_set), dtype=int)
    if len(idx) == 0:
        return 0.0
    if np.any(idx < 0) or np.any(idx >= model.n_points):
        raise ValueError("point indices out of range")
    if len(np.unique(idx)) != len(idx):
        raise ValueError("point indices must be distinct")
    X = model.inputs[idx]
    K = se_kernel(X, model.lengthscales, model.signal_variance)
    return information_gain(K, model.noise_vector()[idx])


def ig_game(model: GpModel) -> Game:
    """Plain information-gain game: v(C) = IG of C's points (monotone submodular)."""
    return Game(model.n_parties, lambda mask: gp_ig(model, model.points_of_mask(mask)))


def conditional_ig_game(model: GpModel) -> Game:
    """Conditional information-gain game: v(C) = IG(all) - IG(complement's points).

    Satisfies non-negativity, monotonicity, and superadditivity, being
    the dual of the plain (submodular) information gain.
    """
    n = model.n_parties
    total = gp_ig(model, np.arange(model.n_points))
    full = (1 << n) - 1

    def oracle(mask: int) -> float:
        return total - gp_ig(model, model.points_of_mask(full ^ mask))

    return Game(n, oracle, superadditive=True)


class DualGame(Game):
    """Dual of a base game: v(C) = base(N) - base(N minus C).

    Shares its Shapley values with the base game; when the base is
    monotone submodular the dual is non-negative, monotone, and
    superadditive.
    """

    def __init__(self, base: Game):
        if base.n > MAX_EXACT_PARTIES:
            raise TooLarge(f"dual construction needs n <= {MAX_EXACT_PARTIES}")
        grand = base.grand_value()
        full = base.grand_mask
        super().__init__(base.n, lambda mask: grand - base.value_mask(full ^ mask))
        self.base = base


def dual_game(base: Game) -> DualGame:
    return DualGame(base)


def gp_predict(
    model: GpModel,
    targets: np.ndarray,
    point_indices,
    X_test: np.ndarray,
    *,
    point_noise: np.ndarray | None = None,
    test_noise: float | None = None,
) -> PredictiveDistribution:
    """GP posterior predictive at test inputs from a subset of the design points.

    point_noise overrides the model's noise for the conditioning points
    (used for tempered model rewards).  The predictive variance includes
    observation noise: test_noise if given, else the model's scalar
    noise, else the mean of its per-point noise.
    """
    idx = np.asarray(list(point_indices), dtype=int)
    y = np.asarray(targets, dtype=float)[idx]
    Xs = model.inputs[idx]
    noise = model.noise_vector()[idx] if point_noise is None else np.asarray(point_noise)
    if len(noise) != len(idx) or np.any(noise <= 0):
        raise ValueError("need one positive noise entry per conditioning point")
    if test_noise is None:
        base = np.asarray(model.noise_variance, dtype=float)
        test_noise = float(base) if base.ndim == 0 else float(base.mean())

    K = se_kernel(Xs, model.lengthscales, model.signal_variance) + np.diag(noise)
    L = _robust_cholesky(K)
    K_star = se_kernel(Xs, model.lengthscales, model.signal_variance, X_test)
    alpha = scipy.linalg.solve_triangular(L, y, lower=True)
    alpha = scipy.linalg.solve_triangular(L.T, alpha, lower=False)
    mean = K_star.T @ alpha
    Q = scipy.linalg.solve_triangular(L, K_star, lower=True)
    var_f = model.signal_variance - np.sum(Q * Q, axis=0)
    var = np.maximum(var_f, 0.0) + test_noise
    return PredictiveDistribution(mean, var)


def make_gp_model(
    dataset: Dataset,
    lengthscales=None,
    signal_variance: float = 1.0,
    noise_variance=0.05,
) -> GpModel:
    """Build a GpModel from the assigned points of a partitioned dataset.

    Unassigned points (party 0) are dropped.  lengthscales defaults to
    1.0 per feature.
    """
    keep = dataset.party >= 1
    X = dataset.features[keep]
    own = dataset.party[keep]
    if len(X) == 0:
        raise ValueError("dataset has no assigned points")
    if lengthscales is None:
        lengthscales = np.ones(X.shape[1])
    noise = np.asarray(noise_variance, dtype=float)
    if noise.ndim == 1:
        noise = noise[keep]
    return GpModel(X, own, np.asarray(lengthscales, dtype=float), signal_variance, noise)


def load_gp_config(path) -> dict:
    """Read {"lengthscales": [..], "signal_variance": f, "noise_variance": f|[..]}."""
    with open(path) as fh:
        doc = json.load(fh)
    out = {}
    if "lengthscales" in doc:
        out["lengthscales"] = np.asarray(doc["lengthscales"], dtype=float)
    if "signal_variance" in doc:
        out["signal_variance"] = float(doc["signal_variance"])
    if "noise_variance" in doc:
        noise = doc["noise_variance"]
        out["noise_variance"] = (
            float(noise) if np.isscalar(noise) else np.asarray(noise, dtype=float)
        )
    return out
