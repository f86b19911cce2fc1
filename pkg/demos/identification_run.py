"""Trace one champion-challenger identification episode round by round.

Run: python demos/identification_run.py
"""

import numpy as np

from ofdm_bandits import ChannelConfig, draw_env, oracle_top_m
from ofdm_bandits.benchmark import BENCHMARK_FEATURE_CONFIDENCE, BENCHMARK_REG
from ofdm_bandits.channel import lipschitz_noise_bound
from ofdm_bandits.ccs import (
    CCSConfig,
    init_shortlists,
    rotate_challengers,
    select_ambiguous_pair,
    select_arm,
    update_champions,
)
from ofdm_bandits.estimator import ArmEstimator
from ofdm_bandits.gaps import ComparisonCounter, ConfidenceConfig, beta

K, M, M_PRIME = 20, 5, 6

env = draw_env(ChannelConfig(num_tones=K, snr_noise_std_db=1.0, seed=11))
truth = sorted(oracle_top_m(env.true_means, M))
print(f"true top-{M} tones: {truth}")

conf = ConfidenceConfig(
    delta=0.05,
    sigma=lipschitz_noise_bound(1.0),
    reg=BENCHMARK_REG,
    theta_norm_bound=env.theta_norm_bound(reg=BENCHMARK_REG),
)
config = CCSConfig(num_champions=M, challenger_size=M_PRIME, epsilon=1e-15, max_rounds=2000)
rng = np.random.default_rng(0)

counter = ComparisonCounter()
estimator = ArmEstimator(env, reg=conf.reg, feature_confidence=BENCHMARK_FEATURE_CONFIDENCE)
state = init_shortlists(env, config, rng, reg=conf.reg)
state.design = estimator.design
all_arms = np.arange(K)

print(f"random-start champions: {sorted(state.champions)}")
for t in range(1, config.max_rounds + 1):
    update_champions(state)
    fdev = estimator.feature_uncertainty()
    rotate_challengers(state, config.challenger_size, optimism=fdev)
    radius = beta(state.design, conf)
    b_t, ca_t, best = select_ambiguous_pair(
        state, estimator.features, conf, counter, feature_dev=fdev, radius=radius
    )
    if best <= config.epsilon:
        print(f"round {t:4d}: most ambiguous pair ({ca_t} vs {b_t}) index {best:+.4f} -> stop")
        break
    arm = select_arm(
        state, estimator.features, (b_t, ca_t), radius=radius,
        feature_dev=fdev, feature_dev_after=estimator.feature_uncertainty_if_pulled(all_arms),
    )
    estimator.pull(arm)
    state.mu_hat = estimator.mu_hat()
    if t % 25 == 0 or t <= 3:
        print(
            f"round {t:4d}: champions {sorted(state.champions)}, "
            f"pair ({ca_t} vs {b_t}) index {best:+.4f}, pulled {arm}"
        )

selected = sorted(state.champions)
print(f"\nselected: {selected}")
print(f"correct:  {selected == truth}")
print(f"pulls: {estimator.design.pulls}, gap-index comparisons: {counter.count}")
