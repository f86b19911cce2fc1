"""Top-m pure-exploration linear bandits for OFDM subcarrier selection.

A champion-challenger sampler plus three reference baselines, an OFDM
downlink simulator producing noisy per-subcarrier rate rewards, and a
benchmark harness that measures comparisons, pulls, correctness, and runtime
on identical channel realizations.
"""

from .benchmark import comparison_benchmark_config, small_ordering_config
from .baselines import (
    LINGAPE,
    LINGIFA,
    LINUGAPE,
    BaselineConfig,
    run_lingape,
    run_lingifa,
    run_linugape,
)
from .ccs import CCSConfig, ShortlistState, run as run_ccs
from .channel import (
    BanditEnv,
    ChannelConfig,
    draw_env,
    feature_map,
    lipschitz_noise_bound,
    noise_power_watts,
    observe_snr,
    total_power_dbm,
    true_rate,
)
from .design import DesignState
from .estimator import ArmEstimator
from .gaps import (
    ComparisonCounter,
    ConfidenceConfig,
    InstanceDiagnostics,
    beta,
    complexity_h,
    gap_index,
    true_gaps,
    width,
)
from .harness import (
    ALL_ALGORITHMS,
    AggregateStats,
    ExperimentConfig,
    TrialRecord,
    aggregate,
    exhaustive_pull_count,
    oracle_top_m,
    read_csv,
    run_experiment,
    write_csv,
)
from .results import TrialResult
from .synthetic import LinearEnv, make_separated_instance

__all__ = [
    "ALL_ALGORITHMS",
    "AggregateStats",
    "BanditEnv",
    "BaselineConfig",
    "CCSConfig",
    "ChannelConfig",
    "ComparisonCounter",
    "ConfidenceConfig",
    "DesignState",
    "ExperimentConfig",
    "InstanceDiagnostics",
    "LINGAPE",
    "LINGIFA",
    "LINUGAPE",
    "LinearEnv",
    "ShortlistState",
    "TrialRecord",
    "TrialResult",
    "ArmEstimator",
    "aggregate",
    "beta",
    "comparison_benchmark_config",
    "complexity_h",
    "draw_env",
    "exhaustive_pull_count",
    "feature_map",
    "gap_index",
    "lipschitz_noise_bound",
    "make_separated_instance",
    "noise_power_watts",
    "observe_snr",
    "oracle_top_m",
    "read_csv",
    "run_ccs",
    "run_experiment",
    "run_lingape",
    "run_lingifa",
    "run_linugape",
    "small_ordering_config",
    "total_power_dbm",
    "true_gaps",
    "true_rate",
    "width",
    "write_csv",
]

__version__ = "0.1.0"
