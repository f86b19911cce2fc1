"""Experiment orchestration: trial scheduling, scoring, aggregation, persistence.

Every algorithm in a trial sees the same channel realization (identical SNRs
and feature matrices); reward streams are forked per algorithm from a
counter-based generator keyed by (seed_base, trial_id, algorithm), so adding
an algorithm to a run never perturbs the others' randomness.
"""

from __future__ import annotations

import csv
import dataclasses
import itertools
import json
import math
import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import baselines, ccs
from .channel import ChannelConfig, draw_env
from .estimator import DEFAULT_FEATURE_CONFIDENCE
from .gaps import ConfidenceConfig
from .results import TrialResult

ALL_ALGORITHMS = (ccs.ALGORITHM_NAME,) + baselines.BASELINE_NAMES

# Subset enumeration is for audit at toy sizes only; C(K, m) explodes beyond this.
ENUMERATION_MAX_ARMS = 25

CSV_COLUMNS = (
    "trial_id",
    "algo",
    "K",
    "m",
    "d",
    "challenger_size",
    "seed",
    "correct",
    "converged",
    "pulls",
    "comparisons",
    "tau",
    "wall_time_ms",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """One benchmark setting: channel, algorithms, and trial protocol."""

    channel: ChannelConfig
    algorithms: tuple[str, ...] = ALL_ALGORITHMS
    num_champions: int = 12
    feature_dim: int = 20
    epsilon: float = 1e-15
    delta: float = 0.05
    challenger_size: int = 10
    trials: int = 50
    seed_base: int = 0
    output_dir: str = "results"
    max_rounds: int = 1_000_000
    max_rounds_by_algo: dict | None = None
    sigma: float = 1.0
    reg: float = 1.0
    feature_confidence: float = DEFAULT_FEATURE_CONFIDENCE

    def round_cap(self, algorithm: str) -> int:
        if self.max_rounds_by_algo and algorithm in self.max_rounds_by_algo:
            return int(self.max_rounds_by_algo[algorithm])
        return self.max_rounds

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        unknown = set(self.algorithms) - set(ALL_ALGORITHMS)
        if unknown:
            raise ValueError(f"unknown algorithms: {sorted(unknown)}")
        if self.num_champions >= self.channel.num_tones:
            raise ValueError("num_champions must be smaller than the number of tones")


@dataclass(frozen=True)
class TrialRecord:
    """One CSV row: a trial result plus the experiment context it ran in."""

    trial_id: int
    algo: str
    K: int
    m: int
    d: int
    challenger_size: int
    seed: int
    correct: bool
    converged: bool
    pulls: int
    comparisons: int
    tau: int
    wall_time_ms: float


@dataclass
class AggregateStats:
    """Converged-trial statistics for one (algorithm, K, challenger_size) group."""

    algo: str
    K: int
    challenger_size: int
    n_converged: int
    n_nonconverged: int
    comparisons_mean: float
    comparisons_std: float
    pulls_mean: float
    pulls_std: float
    wall_time_ms_mean: float
    wall_time_ms_std: float
    correctness_rate: float


def oracle_top_m(means, m: int, method: str = "sort") -> frozenset[int]:
    """True top-m arms under additive utility.

    `sort` ranks arms by mean (ties to the lowest index); `enumerate` scans
    every size-m subset for the largest summed mean, which is only allowed at
    toy sizes. Additivity makes the two agree.
    """
    means = np.asarray(means, dtype=float)
    k = len(means)
    if not 1 <= m < k:
        raise ValueError(f"need 1 <= m < K, got m={m}, K={k}")
    if method == "sort":
        order = np.lexsort((np.arange(k), -means))
        return frozenset(int(a) for a in order[:m])
    if method == "enumerate":
        if k > ENUMERATION_MAX_ARMS:
            raise ValueError(
                f"subset enumeration refused for K={k} > {ENUMERATION_MAX_ARMS}"
            )
        best_subset = None
        best_value = -math.inf
        for subset in itertools.combinations(range(k), m):
            value = float(means[list(subset)].sum())
            if value > best_value:
                best_value = value
                best_subset = subset
        return frozenset(best_subset)
    raise ValueError(f"unknown oracle method {method!r}")


def exhaustive_pull_count(k: int, m: int, samples_per_arm: int) -> int:
    """Pulls an exhaustive subset evaluation would need: m * M * C(K, m).

    Exact integer arithmetic; the result overflows any fixed width long before
    K reaches realistic carrier counts.
    """
    if not (k >= m >= 1):
        raise ValueError("need K >= m >= 1")
    if samples_per_arm < 1:
        raise ValueError("samples_per_arm must be >= 1")
    return m * samples_per_arm * math.comb(k, m)


def trial_rng(seed_base: int, trial_id: int, algorithm: str | None = None) -> np.random.Generator:
    """Counter-based generator for one trial, optionally sub-keyed by algorithm."""
    entropy = [seed_base, trial_id]
    if algorithm is not None:
        entropy.append(zlib.crc32(algorithm.encode("utf-8")))
    return np.random.Generator(np.random.Philox(seed=np.random.SeedSequence(entropy)))


def run_algorithm(
    name: str,
    env,
    config: ExperimentConfig,
    conf: ConfidenceConfig,
    rng: np.random.Generator,
) -> TrialResult:
    if name == ccs.ALGORITHM_NAME:
        algo_config = ccs.CCSConfig(
            num_champions=config.num_champions,
            challenger_size=config.challenger_size,
            epsilon=config.epsilon,
            delta=config.delta,
            max_rounds=config.round_cap(name),
        )
        return ccs.run(env, algo_config, conf, rng, feature_confidence=config.feature_confidence)
    base_config = baselines.BaselineConfig(
        algorithm=name,
        num_champions=config.num_champions,
        epsilon=config.epsilon,
        delta=config.delta,
        max_rounds=config.round_cap(name),
    )
    return baselines.run_baseline(env, base_config, conf, rng, feature_confidence=config.feature_confidence)


def run_trial(config: ExperimentConfig, trial_id: int) -> list[TrialRecord]:
    """Draw one channel realization and run every configured algorithm on it."""
    seed = config.seed_base + trial_id
    channel = dataclasses.replace(config.channel, seed=seed)
    base_env = draw_env(channel, feature_dim=config.feature_dim)
    truth = oracle_top_m(base_env.true_means, config.num_champions)
    conf = ConfidenceConfig(
        delta=config.delta,
        sigma=config.sigma,
        reg=config.reg,
        theta_norm_bound=base_env.theta_norm_bound(reg=config.reg),
    )

    records = []
    for name in config.algorithms:
        algo_rng = trial_rng(config.seed_base, trial_id, name)
        env = base_env.fork(trial_rng(config.seed_base, trial_id, name + "/rewards"))
        result = run_algorithm(name, env, config, conf, algo_rng)
        result.trial_id = trial_id
        result.correct = result.converged and frozenset(result.selected_set) == truth
        records.append(
            TrialRecord(
                trial_id=trial_id,
                algo=name,
                K=channel.num_tones,
                m=config.num_champions,
                d=config.feature_dim,
                challenger_size=config.challenger_size,
                seed=seed,
                correct=result.correct,
                converged=result.converged,
                pulls=result.pulls,
                comparisons=result.comparisons,
                tau=result.tau,
                wall_time_ms=result.wall_time_ms,
            )
        )
    return records


def aggregate(records: list[TrialRecord]) -> list[AggregateStats]:
    """Group records by (algo, K, challenger_size) and summarize converged trials.

    Mean and standard deviation use the n-1 denominator (std of a single trial
    is 0); correctness is the fraction of converged trials that matched the
    oracle. Non-converged trials are counted separately and excluded from the
    moments.
    """
    if not records:
        raise ValueError("cannot aggregate an empty record list")

    def key(r: TrialRecord):
        return (r.algo, r.K, r.challenger_size)

    stats = []
    for group_key, group_iter in itertools.groupby(sorted(records, key=key), key=key):
        group = list(group_iter)
        converged = [r for r in group if r.converged]
        n_conv = len(converged)

        def moments(values):
            if not values:
                return math.nan, math.nan
            arr = np.asarray(values, dtype=float)
            std = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
            return float(arr.mean()), std

        comp_mean, comp_std = moments([r.comparisons for r in converged])
        pull_mean, pull_std = moments([r.pulls for r in converged])
        time_mean, time_std = moments([r.wall_time_ms for r in converged])
        stats.append(
            AggregateStats(
                algo=group_key[0],
                K=group_key[1],
                challenger_size=group_key[2],
                n_converged=n_conv,
                n_nonconverged=len(group) - n_conv,
                comparisons_mean=comp_mean,
                comparisons_std=comp_std,
                pulls_mean=pull_mean,
                pulls_std=pull_std,
                wall_time_ms_mean=time_mean,
                wall_time_ms_std=time_std,
                correctness_rate=(sum(r.correct for r in converged) / n_conv) if n_conv else math.nan,
            )
        )
    return stats


def write_csv(records: list[TrialRecord], path: Path | str) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(
                [
                    r.trial_id,
                    r.algo,
                    r.K,
                    r.m,
                    r.d,
                    r.challenger_size,
                    r.seed,
                    r.correct,
                    r.converged,
                    r.pulls,
                    r.comparisons,
                    r.tau,
                    repr(r.wall_time_ms),
                ]
            )


def read_csv(path: Path | str) -> list[TrialRecord]:
    """Parse a results file back into records; exact round trip of write_csv."""
    path = Path(path)
    records = []
    with path.open("r", newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames!r} in {path}")
        for row in reader:
            records.append(
                TrialRecord(
                    trial_id=int(row["trial_id"]),
                    algo=row["algo"],
                    K=int(row["K"]),
                    m=int(row["m"]),
                    d=int(row["d"]),
                    challenger_size=int(row["challenger_size"]),
                    seed=int(row["seed"]),
                    correct=row["correct"] == "True",
                    converged=row["converged"] == "True",
                    pulls=int(row["pulls"]),
                    comparisons=int(row["comparisons"]),
                    tau=int(row["tau"]),
                    wall_time_ms=float(row["wall_time_ms"]),
                )
            )
    return records


def summary_payload(config: ExperimentConfig, stats: list[AggregateStats], failures) -> dict:
    return {
        "setting": {
            "K": config.channel.num_tones,
            "m": config.num_champions,
            "d": config.feature_dim,
            "challenger_size": config.challenger_size,
            "epsilon": config.epsilon,
            "delta": config.delta,
            "trials": config.trials,
            "seed_base": config.seed_base,
            "snr_noise_std_db": config.channel.snr_noise_std_db,
        },
        "exhaustive_pull_count": str(
            exhaustive_pull_count(config.channel.num_tones, config.num_champions, 1)
        ),
        "groups": [dataclasses.asdict(s) for s in stats],
        "failed_trials": failures,
    }


def run_experiment(
    config: ExperimentConfig, verbose: bool = False
) -> tuple[list[TrialRecord], list[AggregateStats]]:
    """Run all trials, persist per-trial CSV and summary JSON, return both views.

    A trial whose algorithm raises is recorded under failed_trials in the
    summary and contributes no CSV row; one bad instance never aborts a sweep.
    """
    out_dir = Path(config.output_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        probe = out_dir / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise RuntimeError(f"output directory {out_dir} is not writable: {exc}") from exc

    records: list[TrialRecord] = []
    failures: list[dict] = []
    for trial_id in range(config.trials):
        try:
            records.extend(run_trial(config, trial_id))
        except Exception as exc:  # noqa: BLE001 - isolate per-trial failures
            failures.append({"trial_id": trial_id, "error": f"{type(exc).__name__}: {exc}"})
        if verbose:
            print(f"trial {trial_id + 1}/{config.trials} done")

    if not records and failures:
        raise RuntimeError(f"all {config.trials} trials failed; first: {failures[0]['error']}")

    stats = aggregate(records) if records else []
    write_csv(records, out_dir / "results.csv")
    with (out_dir / "summary.json").open("w", encoding="utf-8") as fh:
        json.dump(summary_payload(config, stats, failures), fh, indent=2)
    return records, stats
