"""Instance diagnostics: true gaps, hardness H, and the exhaustive-search cost.

Run: python demos/instance_hardness.py
"""

import numpy as np

from ofdm_bandits import ChannelConfig, complexity_h, draw_env, exhaustive_pull_count, true_gaps
from ofdm_bandits.channel import lipschitz_noise_bound

M = 12
for num_tones in (40, 100, 600):
    env = draw_env(ChannelConfig(num_tones=num_tones, seed=1))
    diag = true_gaps(env.true_means, M)
    sigma = lipschitz_noise_bound(1.0)
    h = complexity_h(diag, sigma=sigma, epsilon=0.0)
    brute = exhaustive_pull_count(num_tones, M, 1)
    print(f"K={num_tones:4d}: boundary gap {np.min(diag.true_gaps):.4f} bits/s/Hz, "
          f"hardness H={h:.3g}, exhaustive pulls m*M*C(K,m)={brute:.3g}")

print("\nHardness is driven by the arms closest to the top-m boundary;")
print("the exhaustive count is why adaptive identification is needed at all.")
