"""Tests for the shared reward/feature estimator."""

import numpy as np
import pytest

from ofdm_bandits.channel import ChannelConfig, draw_env, feature_map
from ofdm_bandits.design import DesignState
from ofdm_bandits.estimator import ArmEstimator, pair_deviation
from ofdm_bandits.synthetic import make_separated_instance


class TestRefinement:
    def test_feature_row_tracks_db_average(self):
        env = draw_env(ChannelConfig(num_tones=6, snr_noise_std_db=1.0, seed=3))
        est = ArmEstimator(env, reg=1.0)
        observed = [env.snr_observations[2]]
        rng_probe = env.rng  # estimator pulls consume this stream
        for _ in range(5):
            before = rng_probe.bit_generator.state
            est.pull(2)
        mean_db = est._db_sums[2] / est._obs_counts[2]
        expected_row = feature_map(10 ** (mean_db / 10), env.feature_dim, env.gamma_ref)
        np.testing.assert_allclose(est.features[2], expected_row)
        assert est._obs_counts[2] == 6  # init draw plus five pulls

    def test_design_matches_full_rebuild(self):
        # oracle: regress the same rewards on the final feature rows directly
        env = draw_env(ChannelConfig(num_tones=5, snr_noise_std_db=1.0, seed=9))
        est = ArmEstimator(env, reg=0.5)
        pulls = [0, 1, 0, 2, 0, 1, 3, 0, 2, 1]
        rewards = [est.pull(a) for a in pulls]
        rebuilt = DesignState(env.feature_dim, 0.5)
        for a, y in zip(pulls, rewards):
            rebuilt.rank_one_update(est.features[a], y)
        np.testing.assert_allclose(est.design.gram, rebuilt.gram, atol=1e-9)
        np.testing.assert_allclose(est.design.theta_hat, rebuilt.theta_hat, atol=1e-7)
        assert est.design.pulls == len(pulls)

    def test_uncertainty_decreases_with_observations(self):
        env = draw_env(ChannelConfig(num_tones=4, snr_noise_std_db=1.0, seed=5))
        est = ArmEstimator(env, reg=1.0)
        before = est.feature_uncertainty()[1]
        for _ in range(8):
            est.pull(1)
        after = est.feature_uncertainty()[1]
        assert after < before
        assert np.all(est.feature_uncertainty() > 0)

    def test_if_pulled_projection(self):
        env = draw_env(ChannelConfig(num_tones=4, snr_noise_std_db=1.0, seed=6))
        est = ArmEstimator(env, reg=1.0)
        current = est.feature_uncertainty()
        projected = est.feature_uncertainty_if_pulled(np.arange(4))
        assert np.all(projected < current)

    def test_noiseless_channel_never_moves_features(self):
        env = draw_env(ChannelConfig(num_tones=5, snr_noise_std_db=0.0, seed=7))
        est = ArmEstimator(env, reg=1.0)
        original = est.features.copy()
        for _ in range(10):
            est.pull(0)
        np.testing.assert_allclose(est.features, original)
        assert np.all(est.feature_uncertainty() == 0.0)


class TestExactFeatureEnvironments:
    def test_linear_env_static_path(self):
        env = make_separated_instance(8, 2, 3, 0.3, noise_std=1.0, seed=1)
        est = ArmEstimator(env, reg=1.0)
        original = est.features.copy()
        for _ in range(15):
            est.pull(3)
        np.testing.assert_array_equal(est.features, original)
        assert np.all(est.feature_uncertainty() == 0.0)
        assert est.design.pulls == 15

    def test_mu_hat_shape(self):
        env = make_separated_instance(6, 2, 4, 0.3, seed=2)
        est = ArmEstimator(env, reg=1.0)
        assert est.mu_hat().shape == (6,)


class TestPairDeviation:
    def test_root_sum_square(self):
        rows = np.array([3.0, 0.0])
        cols = np.array([4.0, 1.0])
        expected = np.array([[5.0, np.sqrt(10.0)], [4.0, 1.0]])
        np.testing.assert_allclose(pair_deviation(rows, cols), expected)
