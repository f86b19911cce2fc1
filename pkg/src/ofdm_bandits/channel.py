"""OFDM downlink bandit environment.

Per-tone SNRs follow a link budget with Rayleigh small-scale fading. Pulling
an arm (subcarrier) returns a spectral-efficiency reward computed from a
fresh noisy dB-domain SNR observation, so reward noise is multiplicative in
the SNR and bounded sub-Gaussian in the rate domain.

Feature vectors are normalized SNR powers (u, u^2, ..., u^d) built once per
episode from one noisy SNR observation per arm; the channel is static within
an identification episode, so later pulls refresh rewards but not features.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

THERMAL_NOISE_DBM_PER_HZ = -174.0

# Slope of log2(1 + g*10^(xi/10)) in xi, maximized over g >= 0. Multiplying
# a dB-domain SNR error by this bounds the induced rate-reward error.
DB_TO_RATE_SLOPE = math.log(10.0) / (10.0 * math.log(2.0))

# Normalization quantile for the feature reference SNR: the fading tail above
# it is clamped so that u^d stays in [0, 1] and the Gram matrix stays sane.
REFERENCE_QUANTILE = 0.99

DEFAULT_FEATURE_DIM = 20


@dataclass(frozen=True)
class ChannelConfig:
    """Link budget and numerology for one OFDM instance.

    Defaults: 15 kHz subcarrier spacing, 2.22 dBm per-tone transmit power,
    5 dB receiver noise figure, -120 dB pathloss, 1 dB SNR estimation noise.
    """

    num_tones: int
    subcarrier_spacing_hz: float = 15_000.0
    per_tone_power_dbm: float = 2.22
    noise_figure_db: float = 5.0
    pathloss_db: float = -120.0
    snr_noise_std_db: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if int(self.num_tones) != self.num_tones or self.num_tones < 1:
            raise ValueError(f"num_tones must be a positive integer, got {self.num_tones!r}")
        if self.subcarrier_spacing_hz <= 0:
            raise ValueError("subcarrier_spacing_hz must be positive")
        if self.snr_noise_std_db < 0:
            raise ValueError("snr_noise_std_db must be nonnegative")


def noise_power_watts(config: ChannelConfig) -> float:
    """Per-tone thermal noise power in watts: -174 dBm/Hz + 10log10(df) + NF."""
    noise_dbm = (
        THERMAL_NOISE_DBM_PER_HZ
        + 10.0 * math.log10(config.subcarrier_spacing_hz)
        + config.noise_figure_db
    )
    return 10.0 ** ((noise_dbm - 30.0) / 10.0)


def total_power_dbm(config: ChannelConfig) -> float:
    """Total transmit power across all tones, in dBm."""
    return config.per_tone_power_dbm + 10.0 * math.log10(config.num_tones)


def mean_snr_linear(config: ChannelConfig) -> float:
    """Linear-scale SNR at unit fading gain (the mean of the fading ensemble)."""
    p_lin_watts = 10.0 ** ((config.per_tone_power_dbm - 30.0) / 10.0)
    return p_lin_watts * 10.0 ** (config.pathloss_db / 10.0) / noise_power_watts(config)


def reference_snr(config: ChannelConfig, quantile: float = REFERENCE_QUANTILE) -> float:
    """Feature-normalization SNR: the given fading quantile of the link budget.

    For unit-mean exponential |h|^2 the q-quantile is -ln(1-q) times the mean
    SNR. Falls back to 1.0 when the budget collapses to zero signal.
    """
    scale = mean_snr_linear(config)
    ref = -math.log(1.0 - quantile) * scale
    return ref if ref > 0 else 1.0


def true_rate(gamma: float) -> float:
    """Achievable rate log2(1 + gamma) in bits/s/Hz; strictly increasing."""
    if gamma < 0:
        raise ValueError(f"gamma must be nonnegative, got {gamma!r}")
    return math.log2(1.0 + gamma)


def observe_snr(gamma: float, sigma_xi_db: float, rng: np.random.Generator) -> float:
    """Noisy SNR observation gamma * 10^(xi/10) with xi ~ N(0, sigma_xi_db^2)."""
    if gamma < 0:
        raise ValueError(f"gamma must be nonnegative, got {gamma!r}")
    xi = rng.normal(0.0, sigma_xi_db) if sigma_xi_db > 0 else 0.0
    return gamma * 10.0 ** (xi / 10.0)


def lipschitz_noise_bound(sigma_xi_db: float) -> float:
    """Sub-Gaussian proxy std of rate-reward noise induced by dB SNR errors."""
    if sigma_xi_db < 0:
        raise ValueError("sigma_xi_db must be nonnegative")
    return DB_TO_RATE_SLOPE * sigma_xi_db


def feature_map(gamma_hat: float, dim: int, gamma_ref: float) -> NDArray[np.float64]:
    """Normalized SNR-power features (u, u^2, ..., u^dim) with u clamped to [0, 1]."""
    if gamma_hat < 0:
        raise ValueError("gamma_hat must be nonnegative")
    if gamma_ref <= 0:
        raise ValueError("gamma_ref must be positive")
    if int(dim) != dim or dim < 1:
        raise ValueError("dim must be a positive integer")
    u = min(gamma_hat / gamma_ref, 1.0)
    return u ** np.arange(1, int(dim) + 1, dtype=float)


def surrogate_theta(
    gamma_ref: float, dim: int, reg: float = 1.0, grid_size: int = 256
) -> NDArray[np.float64]:
    """Ridge fit of the rate curve on the normalized feature basis.

    Fits log2(1 + u * gamma_ref) over u in [0, 1] with the same basis and
    regularization the estimator uses; its norm is the natural bound on
    ||theta*|| for confidence radii.
    """
    u = np.linspace(0.0, 1.0, grid_size)
    X = u[:, None] ** np.arange(1, dim + 1, dtype=float)[None, :]
    y = np.log2(1.0 + u * gamma_ref)
    gram = X.T @ X + reg * np.eye(dim)
    return np.linalg.solve(gram, X.T @ y)


@dataclass
class BanditEnv:
    """One OFDM bandit instance: fixed SNRs and features, stochastic rewards.

    Immutable after draw except for the reward stream. `fork` yields a view of
    the same channel realization with an independent reward stream, so several
    algorithms can be benchmarked on identical instances.
    """

    config: ChannelConfig
    true_snr: NDArray[np.float64]
    true_means: NDArray[np.float64]
    features: NDArray[np.float64]
    snr_observations: NDArray[np.float64]
    feature_dim: int
    gamma_ref: float
    rng: np.random.Generator = field(repr=False)

    @property
    def num_arms(self) -> int:
        return len(self.true_snr)

    def pull(self, arm: int) -> float:
        """Observed achievable rate on `arm` from a fresh noisy SNR draw."""
        return self.pull_with_snr(arm)[0]

    def pull_with_snr(self, arm: int) -> tuple[float, float]:
        """Reward plus the noisy SNR observation it was computed from."""
        if not 0 <= arm < self.num_arms:
            raise ValueError(f"arm index {arm} out of range [0, {self.num_arms})")
        gamma_hat = observe_snr(
            float(self.true_snr[arm]), self.config.snr_noise_std_db, self.rng
        )
        return math.log2(1.0 + gamma_hat), gamma_hat

    def fork(self, rng: np.random.Generator) -> "BanditEnv":
        """Same channel realization, independent reward stream."""
        return BanditEnv(
            config=self.config,
            true_snr=self.true_snr,
            true_means=self.true_means,
            features=self.features,
            snr_observations=self.snr_observations,
            feature_dim=self.feature_dim,
            gamma_ref=self.gamma_ref,
            rng=rng,
        )

    def theta_norm_bound(self, reg: float = 1.0) -> float:
        """Upper bound on the surrogate coefficient norm, for confidence radii."""
        theta = surrogate_theta(self.gamma_ref, self.feature_dim, reg=reg)
        return max(1.0, float(np.linalg.norm(theta)))


def draw_env(
    config: ChannelConfig,
    feature_dim: int = DEFAULT_FEATURE_DIM,
    rng: np.random.Generator | None = None,
) -> BanditEnv:
    """Draw one channel realization and build its feature matrix.

    |h_i|^2 is unit-mean exponential (the modulus-squared of CN(0,1) fading),
    so true_snr[i] = |h_i|^2 * mean_snr_linear(config). Features come from one
    noisy SNR observation per arm. Deterministic given config.seed.
    """
    if int(feature_dim) != feature_dim or feature_dim < 1:
        raise ValueError("feature_dim must be a positive integer")
    if rng is None:
        rng = np.random.Generator(np.random.Philox(config.seed))
    k = config.num_tones
    fading = rng.exponential(1.0, size=k)
    true_snr = fading * mean_snr_linear(config)
    true_means = np.log2(1.0 + true_snr)
    gamma_ref = reference_snr(config)

    features = np.empty((k, feature_dim))
    snr_observations = np.empty(k)
    for i in range(k):
        gamma_hat = observe_snr(float(true_snr[i]), config.snr_noise_std_db, rng)
        snr_observations[i] = gamma_hat
        features[i] = feature_map(gamma_hat, feature_dim, gamma_ref)

    return BanditEnv(
        config=config,
        true_snr=true_snr,
        true_means=true_means,
        features=features,
        snr_observations=snr_observations,
        feature_dim=int(feature_dim),
        gamma_ref=gamma_ref,
        rng=rng,
    )
