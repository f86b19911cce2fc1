"""Synthetic linear instances with exactly linear means and Gaussian rewards.

The OFDM environment's linear surrogate is an approximation; these instances
are exactly linear, which makes them the right substrate for checking the
confidence-width coverage guarantee and the PAC property at their stated
confidence levels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray


@dataclass
class LinearEnv:
    """Bandit instance with means X @ theta_star and N(0, noise_std^2) rewards."""

    features: NDArray[np.float64]
    theta_star: NDArray[np.float64]
    noise_std: float
    rng: np.random.Generator = field(repr=False)

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=float)
        self.theta_star = np.asarray(self.theta_star, dtype=float)
        if self.features.ndim != 2 or self.features.shape[1] != len(self.theta_star):
            raise ValueError("features must be K x d with d matching theta_star")
        if self.noise_std < 0:
            raise ValueError("noise_std must be nonnegative")
        self.true_means = self.features @ self.theta_star

    @property
    def num_arms(self) -> int:
        return self.features.shape[0]

    @property
    def feature_dim(self) -> int:
        return self.features.shape[1]

    def pull(self, arm: int) -> float:
        if not 0 <= arm < self.num_arms:
            raise ValueError(f"arm index {arm} out of range [0, {self.num_arms})")
        return float(self.true_means[arm] + self.rng.normal(0.0, self.noise_std))

    def fork(self, rng: np.random.Generator) -> "LinearEnv":
        return LinearEnv(self.features, self.theta_star, self.noise_std, rng)

    def theta_norm_bound(self, reg: float = 1.0) -> float:
        return float(np.linalg.norm(self.theta_star))


def make_separated_instance(
    num_arms: int,
    num_top: int,
    dim: int,
    min_boundary_gap: float,
    noise_std: float = 1.0,
    seed: int = 0,
    max_tries: int = 10_000,
) -> LinearEnv:
    """Deterministic linear instance whose top-m boundary gap is at least the target.

    Draws unit-norm feature rows and a scaled parameter vector from sub-seeds
    of `seed` until the gap between the m-th and (m+1)-th means meets the
    requirement; the accepted draw is fixed thereafter.
    """
    if not 1 <= num_top < num_arms:
        raise ValueError("need 1 <= num_top < num_arms")
    for attempt in range(max_tries):
        rng = np.random.Generator(np.random.Philox(seed=np.random.SeedSequence([seed, attempt])))
        feats = rng.normal(size=(num_arms, dim))
        feats /= np.linalg.norm(feats, axis=1, keepdims=True)
        theta = rng.normal(size=dim)
        theta *= 2.0 / np.linalg.norm(theta)
        means = np.sort(feats @ theta)[::-1]
        if means[num_top - 1] - means[num_top] >= min_boundary_gap:
            reward_rng = np.random.Generator(np.random.Philox(seed=np.random.SeedSequence([seed, attempt, 1])))
            return LinearEnv(feats, theta, noise_std, reward_rng)
    raise RuntimeError(
        f"no instance with boundary gap >= {min_boundary_gap} found in {max_tries} draws"
    )
