"""Tests for synthetic linear instances and the trial result record."""

import numpy as np
import pytest

from ofdm_bandits.results import TrialResult
from ofdm_bandits.synthetic import LinearEnv, make_separated_instance


class TestLinearEnv:
    def test_means_are_linear(self):
        feats = np.array([[1.0, 0.0], [0.0, 2.0]])
        env = LinearEnv(feats, np.array([3.0, 1.0]), 0.0, np.random.default_rng(0))
        np.testing.assert_allclose(env.true_means, [3.0, 2.0])

    def test_noiseless_pull_exact(self):
        feats = np.eye(3)
        env = LinearEnv(feats, np.array([1.0, 2.0, 3.0]), 0.0, np.random.default_rng(0))
        assert env.pull(2) == 3.0

    def test_noise_scale(self):
        env = LinearEnv(np.ones((1, 2)), np.zeros(2), 1.0, np.random.default_rng(3))
        draws = np.array([env.pull(0) for _ in range(20_000)])
        assert abs(draws.std() - 1.0) < 0.03

    def test_out_of_range(self):
        env = LinearEnv(np.eye(2), np.ones(2), 1.0, np.random.default_rng(0))
        with pytest.raises(ValueError):
            env.pull(2)

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            LinearEnv(np.eye(3), np.ones(2), 1.0, np.random.default_rng(0))


class TestMakeSeparatedInstance:
    def test_boundary_gap_met(self):
        env = make_separated_instance(15, 3, 5, 0.5, seed=42)
        means = np.sort(env.true_means)[::-1]
        assert means[2] - means[3] >= 0.5

    def test_deterministic(self):
        a = make_separated_instance(10, 2, 4, 0.4, seed=9)
        b = make_separated_instance(10, 2, 4, 0.4, seed=9)
        np.testing.assert_array_equal(a.features, b.features)
        np.testing.assert_array_equal(a.theta_star, b.theta_star)

    def test_theta_norm_bound_is_exact(self):
        env = make_separated_instance(10, 2, 4, 0.4, seed=9)
        assert env.theta_norm_bound() == pytest.approx(float(np.linalg.norm(env.theta_star)))

    def test_rejects_bad_m(self):
        with pytest.raises(ValueError):
            make_separated_instance(5, 5, 3, 0.1)


class TestTrialResult:
    def test_non_converged_cannot_be_correct(self):
        with pytest.raises(ValueError):
            TrialResult(
                algorithm="ccs", selected_set=(0,), pulls=1, comparisons=1,
                tau=1, wall_time_ms=0.0, converged=False, correct=True,
            )

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            TrialResult(
                algorithm="ccs", selected_set=(0,), pulls=-1, comparisons=1,
                tau=1, wall_time_ms=0.0, converged=True,
            )
