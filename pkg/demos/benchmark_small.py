"""Compare all four algorithms on a small carrier (K=15, m=3, 25 trials).

The full-size comparison (K=40, m=12, 50 trials) is what the acceptance
suite runs; this scaled version finishes in about a minute.

Run: python demos/benchmark_small.py
"""

from ofdm_bandits.benchmark import small_ordering_config
from ofdm_bandits.harness import run_experiment

config = small_ordering_config(output_dir="results/demo_k15")
print(f"K={config.channel.num_tones}, m={config.num_champions}, "
      f"|C|={config.challenger_size}, trials={config.trials}")

records, stats = run_experiment(config, verbose=False)
print(f"\n{'algorithm':>10} {'conv':>7} {'comparisons':>16} {'pulls':>8} {'ms':>8} {'correct':>8}")
for s in sorted(stats, key=lambda s: s.comparisons_mean):
    print(
        f"{s.algo:>10} {s.n_converged:>4}/{s.n_converged + s.n_nonconverged:<2} "
        f"{s.comparisons_mean:>10.0f} ± {s.comparisons_std:<6.0f} "
        f"{s.pulls_mean:>7.1f} {s.wall_time_ms_mean:>8.1f} {s.correctness_rate:>8.2f}"
    )
print("\nper-trial rows written to results/demo_k15/results.csv")
