"""Shared per-arm estimator: reward regression plus feature-placement uncertainty.

Every identification algorithm funnels its pulls through this class so that
comparisons and pulls are measured against identical estimator machinery.

For environments whose features derive from noisy SNR observations, a single
initialization draw can permanently misrank arms. The estimator therefore
(a) refines an arm's feature row toward the running dB-domain average of all
SNRs observed for that arm (the dB average is unbiased, so refined features
converge to the noise-free ranking), migrating the arm's accumulated
design-matrix mass whenever its row moves, and (b) tracks how far each row
may still be off: the dB error after n observations is sub-Gaussian with
scale sigma_xi/sqrt(n), and its effect on the arm's mean rate is bounded by
the same dB-to-rate Lipschitz constant that bounds reward noise. Gap indices
add this per-arm term to the pair width, so an arm only looks resolved once
its SNR has genuinely been measured often enough.

Environments with exact features (no SNR channel) report zero feature
uncertainty and are never refined; for them everything reduces to the plain
self-normalized width.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import NDArray

from .channel import DB_TO_RATE_SLOPE as DB_RATE_SLOPE
from .channel import feature_map, lipschitz_noise_bound
from .design import DesignState

# Multiplier on the per-arm SNR-measurement deviation used in gap indices;
# roughly a two-sided Gaussian tail at the benchmark's confidence scale.
DEFAULT_FEATURE_CONFIDENCE = 3.0

# Extra confidence on barely-observed arms, decaying as 1/n. With K arms and
# an anytime stopping rule, some arm's running dB average will stray past
# three sigma at small n in a sizable fraction of episodes, so the low-n
# bound must reach further than the steady-state multiplier.
INIT_EXTRA_CONFIDENCE = 3.0


def pair_deviation(dev_rows: NDArray[np.float64], dev_cols: NDArray[np.float64]) -> NDArray[np.float64]:
    """Combined measurement deviation of arm pairs.

    Different arms' SNR errors are independent, so the pair deviation is the
    root-sum-square of the per-arm terms.
    """
    return np.sqrt(dev_rows[:, None] ** 2 + dev_cols[None, :] ** 2)


class ArmEstimator:
    """Ridge regression of observed rewards on refinable per-arm feature rows.

    Attributes:
        design: the underlying DesignState (one rank-one update per pull)
        features: live K x d feature matrix; rows of refined arms move as
            their SNR averages sharpen
    """

    def __init__(self, env, reg: float = 1.0, feature_confidence: float = DEFAULT_FEATURE_CONFIDENCE):
        self.env = env
        self.design = DesignState(env.feature_dim, reg=reg)
        self.features: NDArray[np.float64] = np.array(env.features, dtype=float, copy=True)
        self.feature_confidence = float(feature_confidence)
        self._refine = hasattr(env, "pull_with_snr")
        k = env.num_arms
        # the initialization SNR draw behind each feature row counts as one
        self._obs_counts = np.ones(k) if self._refine else np.zeros(k)
        self._reward_sums = np.zeros(k)
        self._db_sums = np.zeros(k)
        if self._refine:
            sigma_xi = env.config.snr_noise_std_db
            self._rate_sigma = lipschitz_noise_bound(sigma_xi)
            gamma_init = np.asarray(env.snr_observations, dtype=float)
            self._zero_row = gamma_init <= 0
            self._db_sums = np.where(
                self._zero_row, 0.0, 10.0 * np.log10(np.maximum(gamma_init, 1e-300))
            )
        else:
            self._rate_sigma = 0.0
            self._zero_row = np.zeros(k, dtype=bool)

    @property
    def num_arms(self) -> int:
        return self.env.num_arms

    def mu_hat(self) -> NDArray[np.float64]:
        """Estimated mean rewards for all arms under the current fit."""
        return self.features @ self.design.theta_hat

    def _rate_deviation(self, counts: NDArray[np.float64]) -> NDArray[np.float64]:
        """Rate-domain deviation bound via the local dB-to-rate slope.

        The dB mean of n observations deviates by at most
        z_eff(n) * sigma_xi / sqrt(n), with z_eff inflated on barely-observed
        arms; its rate impact is that times the slope of log2(1 + g),
        evaluated at the upper-confidence SNR so the bound stays valid when
        the point estimate is low. The slope is increasing in g and capped by
        the global Lipschitz constant.
        """
        sigma_xi = self.env.config.snr_noise_std_db
        counts = np.maximum(counts, 1.0)
        z_eff = self.feature_confidence + INIT_EXTRA_CONFIDENCE / counts
        dev_db = z_eff * sigma_xi / np.sqrt(counts)
        with np.errstate(invalid="ignore"):
            gamma_bar = np.where(
                self._zero_row, 0.0, 10.0 ** (self._db_sums / np.maximum(self._obs_counts, 1.0) / 10.0)
            )
        gamma_up = gamma_bar * 10.0 ** (dev_db / 10.0)
        slope = DB_RATE_SLOPE * gamma_up / (1.0 + gamma_up)
        return slope * dev_db

    def feature_uncertainty(self) -> NDArray[np.float64]:
        """Per-arm deviation bound on the mean-rate impact of SNR measurement error.

        Zero for exact-feature environments.
        """
        if not self._refine or self._rate_sigma == 0.0:
            return np.zeros(self.num_arms)
        return self._rate_deviation(self._obs_counts)

    def feature_uncertainty_if_pulled(self, arms) -> NDArray[np.float64]:
        """feature_uncertainty for the given arms as it would be after one more pull."""
        arms = np.asarray(arms, dtype=int)
        if not self._refine or self._rate_sigma == 0.0:
            return np.zeros(len(arms))
        return self._rate_deviation(self._obs_counts + 1.0)[arms]

    def pull(self, arm: int) -> float:
        """Pull an arm, refine its feature row, and absorb the observation."""
        if not self._refine:
            reward = self.env.pull(arm)
            self.design.rank_one_update(self.features[arm], reward)
            return reward

        reward, gamma_hat = self.env.pull_with_snr(arm)
        if gamma_hat > 0.0 and not self._zero_row[arm]:
            prev_count = int(self._obs_counts[arm])
            self._db_sums[arm] += 10.0 * math.log10(gamma_hat)
            self._obs_counts[arm] += 1
            mean_db = self._db_sums[arm] / self._obs_counts[arm]
            new_row = feature_map(10.0 ** (mean_db / 10.0), self.env.feature_dim, self.env.gamma_ref)
            pulled_count = prev_count - 1  # design rows exclude the init draw
            if pulled_count > 0:
                self.design.migrate_weighted_row(
                    self.features[arm], new_row, pulled_count, self._reward_sums[arm]
                )
            self.features[arm] = new_row
        else:
            self._obs_counts[arm] += 1
        self.design.rank_one_update(self.features[arm], reward)
        self._reward_sums[arm] += reward
        return reward
