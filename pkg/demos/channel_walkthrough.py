"""Walk through the OFDM downlink model: link budget, fading, noisy pulls.

Run: python demos/channel_walkthrough.py
"""

import numpy as np

from ofdm_bandits import ChannelConfig, draw_env, lipschitz_noise_bound, noise_power_watts, total_power_dbm
from ofdm_bandits.channel import mean_snr_linear, reference_snr

config = ChannelConfig(num_tones=40, snr_noise_std_db=1.0, seed=7)

print("== link budget ==")
print(f"subcarriers:        {config.num_tones} x {config.subcarrier_spacing_hz / 1e3:.0f} kHz")
print(f"per-tone power:     {config.per_tone_power_dbm:.2f} dBm")
print(f"total power:        {total_power_dbm(config):.2f} dBm")
noise_w = noise_power_watts(config)
print(f"per-tone noise:     {10 * np.log10(noise_w) + 30:.2f} dBm ({noise_w:.3g} W)")
print(f"mean SNR (linear):  {mean_snr_linear(config):.2f}")
print(f"feature reference:  {reference_snr(config):.2f} (99th fading percentile)")

print("\n== one channel realization ==")
env = draw_env(config)
order = np.argsort(-env.true_means)
print(f"best tone:   #{order[0]} at {env.true_means[order[0]]:.3f} bits/s/Hz")
print(f"12th tone:   #{order[11]} at {env.true_means[order[11]]:.3f} bits/s/Hz")
print(f"13th tone:   #{order[12]} at {env.true_means[order[12]]:.3f} bits/s/Hz")
print(f"boundary gap: {env.true_means[order[11]] - env.true_means[order[12]]:.4f} bits/s/Hz")

print("\n== noisy rate observations for the best tone ==")
arm = int(order[0])
pulls = np.array([env.pull(arm) for _ in range(10_000)])
print(f"true rate:      {env.true_means[arm]:.4f}")
print(f"sample mean:    {pulls.mean():.4f}")
print(f"sample std:     {pulls.std():.4f}")
print(f"sub-Gaussian bound at 1 dB SNR noise: {lipschitz_noise_bound(1.0):.4f}")
