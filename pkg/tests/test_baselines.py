"""Tests for the baseline identification algorithms."""

import numpy as np
import pytest

from ofdm_bandits import baselines, ccs
from ofdm_bandits.baselines import BaselineConfig, run_lingape, run_lingifa, run_linugape, ugape_budget_rounds
from ofdm_bandits.channel import ChannelConfig, draw_env
from ofdm_bandits.gaps import ConfidenceConfig
from ofdm_bandits.harness import oracle_top_m


def make_conf(env, reg=0.01, sigma=1.0):
    return ConfidenceConfig(
        delta=0.05, sigma=sigma, reg=reg, theta_norm_bound=env.theta_norm_bound(reg=reg)
    )


def noiseless_env(num_tones=10, seed=7):
    return draw_env(ChannelConfig(num_tones=num_tones, snr_noise_std_db=0.0, seed=seed))


class TestNoiselessCorrectness:
    @pytest.mark.parametrize("runner,name", [
        (run_lingape, "lingape"),
        (run_linugape, "linugape"),
        (run_lingifa, "lingifa"),
    ])
    def test_baseline_identifies_top_m(self, runner, name):
        env = noiseless_env()
        config = BaselineConfig(algorithm=name, num_champions=3, max_rounds=20_000)
        result = runner(env, config, make_conf(env), None)
        assert result.converged
        assert frozenset(result.selected_set) == oracle_top_m(env.true_means, 3)

    def test_all_four_algorithms_agree(self):
        env = noiseless_env(num_tones=12, seed=19)
        truth = oracle_top_m(env.true_means, 4)
        conf = make_conf(env)
        sets = []
        r = ccs.run(
            env.fork(np.random.default_rng(1)),
            ccs.CCSConfig(num_champions=4, challenger_size=4, max_rounds=20_000),
            conf,
            np.random.default_rng(2),
        )
        sets.append(frozenset(r.selected_set))
        for runner, name in [(run_lingape, "lingape"), (run_linugape, "linugape"), (run_lingifa, "lingifa")]:
            result = runner(
                env.fork(np.random.default_rng(3)),
                BaselineConfig(algorithm=name, num_champions=4, max_rounds=20_000),
                conf,
                None,
            )
            sets.append(frozenset(result.selected_set))
        assert all(s == truth for s in sets)


class TestLinUGapE:
    def test_comparison_count_independent_of_rewards(self):
        # identical schedules on different reward streams and noise levels
        counts = []
        for seed, noise in [(1, 1.0), (2, 1.0), (3, 0.5), (4, 2.0)]:
            env = draw_env(ChannelConfig(num_tones=12, snr_noise_std_db=noise, seed=seed))
            config = BaselineConfig(algorithm="linugape", num_champions=3)
            result = run_linugape(env, config, make_conf(env), None)
            counts.append(result.comparisons)
        assert len(set(counts)) == 1
        assert counts[0] == 12 * ugape_budget_rounds(12, 3)

    def test_pull_count_is_budget(self):
        env = draw_env(ChannelConfig(num_tones=9, seed=5))
        config = BaselineConfig(algorithm="linugape", num_champions=2)
        result = run_linugape(env, config, make_conf(env), None)
        budget = ugape_budget_rounds(9, 2)
        assert result.pulls == budget == result.tau
        assert result.pulls >= 9  # at least one forced sweep of every arm
        assert result.converged

    def test_budget_depends_only_on_k_and_m(self):
        assert ugape_budget_rounds(40, 12) == ugape_budget_rounds(40, 12)
        assert ugape_budget_rounds(40, 12) > ugape_budget_rounds(15, 3)


class TestLinGIFA:
    def test_per_round_counter_is_all_ordered_pairs(self):
        env = draw_env(ChannelConfig(num_tones=10, snr_noise_std_db=1.0, seed=6))
        config = BaselineConfig(algorithm="lingifa", num_champions=3, max_rounds=5)
        result = run_lingifa(env, config, make_conf(env), None)
        per_round = 10 * 9
        assert result.comparisons == result.tau * per_round
        assert per_round >= 10 * 9 / 4  # all-pairs scale

    def test_counter_scales_quadratically(self):
        results = {}
        for k in (8, 16):
            env = draw_env(ChannelConfig(num_tones=k, snr_noise_std_db=1.0, seed=8))
            config = BaselineConfig(algorithm="lingifa", num_champions=2, max_rounds=4)
            results[k] = run_lingifa(env, config, make_conf(env), None).comparisons / 4
        assert results[16] / results[8] == pytest.approx((16 * 15) / (8 * 7))


class TestLinGapE:
    def test_per_round_counter_spans_boundary(self):
        env = draw_env(ChannelConfig(num_tones=11, snr_noise_std_db=1.0, seed=9))
        config = BaselineConfig(algorithm="lingape", num_champions=4, max_rounds=6)
        result = run_lingape(env, config, make_conf(env), None)
        assert result.comparisons == result.tau * 4 * (11 - 4)

    def test_non_convergence_flagged(self):
        env = draw_env(ChannelConfig(num_tones=16, snr_noise_std_db=1.0, seed=10))
        config = BaselineConfig(algorithm="lingape", num_champions=5, max_rounds=2)
        result = run_lingape(env, config, make_conf(env), None)
        assert not result.converged


class TestComparisonOrderingSmall:
    def test_ordering_at_k15(self, tmp_path):
        # scaled-down version of the benchmark ordering: 15 tones, m=3
        from ofdm_bandits.benchmark import small_ordering_config
        from ofdm_bandits.harness import run_experiment

        config = small_ordering_config(output_dir=str(tmp_path / "k15"))
        _, stats = run_experiment(config)
        means = {s.algo: s.comparisons_mean for s in stats}
        assert means["ccs"] < means["linugape"] < means["lingape"] < means["lingifa"]


class TestDispatch:
    def test_run_baseline_routes_by_name(self):
        env = noiseless_env(num_tones=8, seed=11)
        for name in baselines.BASELINE_NAMES:
            config = BaselineConfig(algorithm=name, num_champions=2, max_rounds=20_000)
            result = baselines.run_baseline(env.fork(np.random.default_rng(1)), config, make_conf(env), None)
            assert result.algorithm == name

    def test_rejects_unknown_algorithm(self):
        with pytest.raises(ValueError):
            BaselineConfig(algorithm="ucb1", num_champions=2)
