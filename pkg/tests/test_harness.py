"""Tests for the benchmark harness: oracle, persistence, aggregation, scheduling."""

import dataclasses
import itertools
import json
import math

import numpy as np
import pytest

from ofdm_bandits import harness
from ofdm_bandits.channel import ChannelConfig
from ofdm_bandits.harness import (
    CSV_COLUMNS,
    ExperimentConfig,
    TrialRecord,
    aggregate,
    exhaustive_pull_count,
    oracle_top_m,
    read_csv,
    run_experiment,
    write_csv,
)


def pascal_binomial(n, k):
    """Independent binomial oracle via the Pascal-triangle recurrence."""
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[k]


def small_config(**overrides):
    defaults = dict(
        channel=ChannelConfig(num_tones=8, snr_noise_std_db=0.0),
        algorithms=("ccs",),
        num_champions=3,
        feature_dim=6,
        challenger_size=3,
        trials=2,
        seed_base=5,
        output_dir="unused",
        max_rounds=20_000,
        reg=0.01,
    )
    defaults.update(overrides)
    return ExperimentConfig(**defaults)


class TestOracleTopM:
    def test_sorted_instance(self):
        assert oracle_top_m([5, 4, 3, 2, 1], 2) == {0, 1}

    def test_enumeration_agrees_with_sort_100_cases(self):
        rng = np.random.default_rng(123)
        for _ in range(100):
            means = rng.normal(size=8)
            assert oracle_top_m(means, 3, "enumerate") == oracle_top_m(means, 3, "sort")

    def test_all_equal_takes_lowest_indices(self):
        assert oracle_top_m(np.ones(6), 3) == {0, 1, 2}
        assert oracle_top_m(np.ones(6), 3, "enumerate") == {0, 1, 2}

    def test_enumeration_guard(self):
        with pytest.raises(ValueError):
            oracle_top_m(np.zeros(26), 3, "enumerate")

    def test_rejects_bad_m(self):
        with pytest.raises(ValueError):
            oracle_top_m([1.0, 2.0], 2)


class TestExhaustivePullCount:
    def test_paper_scale_k40(self):
        count = exhaustive_pull_count(40, 12, 1)
        assert count == 12 * pascal_binomial(40, 12)
        assert pascal_binomial(40, 12) == 5_586_853_480

    def test_degenerate_single_subset(self):
        assert exhaustive_pull_count(7, 7, 3) == 21

    def test_paper_scale_k100(self):
        # C(100, 12) is about 1.05e15; integer arithmetic must stay exact
        count = exhaustive_pull_count(100, 12, 1)
        assert count == 12 * pascal_binomial(100, 12)
        assert abs(count / 12 - 1.05e15) / 1.05e15 < 0.01

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            exhaustive_pull_count(3, 4, 1)
        with pytest.raises(ValueError):
            exhaustive_pull_count(4, 3, 0)


def make_record(**overrides):
    defaults = dict(
        trial_id=0, algo="ccs", K=8, m=3, d=6, challenger_size=3, seed=5,
        correct=True, converged=True, pulls=10, comparisons=90, tau=10,
        wall_time_ms=1.5,
    )
    defaults.update(overrides)
    return TrialRecord(**defaults)


class TestAggregate:
    def test_single_row_std_zero(self):
        stats = aggregate([make_record()])
        assert stats[0].comparisons_std == 0.0
        assert stats[0].n_converged == 1

    def test_two_row_moments(self):
        rows = [make_record(trial_id=0, comparisons=2), make_record(trial_id=1, comparisons=4)]
        s = aggregate(rows)[0]
        assert s.comparisons_mean == pytest.approx(3.0)
        assert s.comparisons_std == pytest.approx(math.sqrt(2.0), abs=1e-3)

    def test_non_converged_excluded_but_counted(self):
        rows = [
            make_record(trial_id=0, comparisons=10),
            make_record(trial_id=1, comparisons=999_999, converged=False, correct=False),
        ]
        s = aggregate(rows)[0]
        assert s.n_converged == 1
        assert s.n_nonconverged == 1
        assert s.comparisons_mean == 10.0

    def test_correctness_rate_over_converged(self):
        rows = [
            make_record(trial_id=0, correct=True),
            make_record(trial_id=1, correct=False),
            make_record(trial_id=2, converged=False, correct=False),
        ]
        assert aggregate(rows)[0].correctness_rate == pytest.approx(0.5)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            aggregate([])

    def test_groups_by_algo(self):
        rows = [make_record(algo="ccs"), make_record(algo="lingape", trial_id=1)]
        stats = aggregate(rows)
        assert sorted(s.algo for s in stats) == ["ccs", "lingape"]


class TestCsvRoundTrip:
    def test_round_trip_exact(self, tmp_path):
        rows = [
            make_record(trial_id=0, wall_time_ms=1.2345678901234),
            make_record(trial_id=1, algo="lingifa", correct=False, converged=False, comparisons=0),
        ]
        path = tmp_path / "results.csv"
        write_csv(rows, path)
        assert read_csv(path) == rows

    def test_header_row_present_and_ordered(self, tmp_path):
        path = tmp_path / "results.csv"
        write_csv([make_record()], path)
        header = path.read_text(encoding="utf-8").splitlines()[0]
        assert header == ",".join(CSV_COLUMNS)

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("foo,bar\n1,2\n", encoding="utf-8")
        with pytest.raises(ValueError):
            read_csv(path)


class TestRunExperiment:
    def test_noiseless_single_trial_correct(self, tmp_path):
        config = small_config(trials=1, output_dir=str(tmp_path / "out"))
        records, stats = run_experiment(config)
        assert len(records) == 1
        assert records[0].correct and records[0].converged
        assert stats[0].correctness_rate == 1.0
        assert (tmp_path / "out" / "results.csv").exists()
        summary = json.loads((tmp_path / "out" / "summary.json").read_text())
        assert summary["groups"][0]["algo"] == "ccs"
        assert int(summary["exhaustive_pull_count"]) == exhaustive_pull_count(8, 3, 1)

    def test_determinism_excluding_wall_time(self, tmp_path):
        config_a = small_config(output_dir=str(tmp_path / "a"))
        config_b = small_config(output_dir=str(tmp_path / "b"))
        records_a, _ = run_experiment(config_a)
        records_b, _ = run_experiment(config_b)

        def strip_time(rows):
            return [dataclasses.replace(r, wall_time_ms=0.0) for r in rows]

        assert strip_time(records_a) == strip_time(records_b)
        # and the CSVs agree column-by-column except wall_time_ms
        rows_a = read_csv(tmp_path / "a" / "results.csv")
        rows_b = read_csv(tmp_path / "b" / "results.csv")
        assert strip_time(rows_a) == strip_time(rows_b)

    def test_same_env_realization_across_algorithms(self, monkeypatch, tmp_path):
        seen = []
        original = harness.run_algorithm

        def capture(name, env, config, conf, rng):
            seen.append((name, env.true_snr, env.features))
            return original(name, env, config, conf, rng)

        monkeypatch.setattr(harness, "run_algorithm", capture)
        config = small_config(
            algorithms=("ccs", "linugape"), trials=1, output_dir=str(tmp_path / "out")
        )
        run_experiment(config)
        assert len(seen) == 2
        assert seen[0][1] is seen[1][1]  # identical true SNR array object
        assert seen[0][2] is seen[1][2]  # identical feature matrix object

    def test_algorithm_substream_isolation(self, tmp_path):
        # adding an algorithm must not perturb another's trajectory
        solo, _ = run_experiment(small_config(output_dir=str(tmp_path / "solo")))
        both, _ = run_experiment(
            small_config(algorithms=("ccs", "linugape"), output_dir=str(tmp_path / "both"))
        )
        solo_ccs = [dataclasses.replace(r, wall_time_ms=0.0) for r in solo if r.algo == "ccs"]
        both_ccs = [dataclasses.replace(r, wall_time_ms=0.0) for r in both if r.algo == "ccs"]
        assert solo_ccs == both_ccs

    def test_unwritable_output_dir(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        config = small_config(output_dir=str(blocker / "nested"))
        with pytest.raises(RuntimeError):
            run_experiment(config)

    def test_trial_failures_isolated(self, monkeypatch, tmp_path):
        original = harness.run_trial
        calls = itertools.count()

        def flaky(config, trial_id):
            if trial_id == 0:
                raise RuntimeError("synthetic failure")
            return original(config, trial_id)

        monkeypatch.setattr(harness, "run_trial", flaky)
        config = small_config(trials=3, output_dir=str(tmp_path / "out"))
        records, _ = run_experiment(config)
        assert {r.trial_id for r in records} == {1, 2}
        summary = json.loads((tmp_path / "out" / "summary.json").read_text())
        assert summary["failed_trials"][0]["trial_id"] == 0

    def test_round_cap_override(self):
        config = small_config(max_rounds=100, max_rounds_by_algo={"lingifa": 777})
        assert config.round_cap("ccs") == 100
        assert config.round_cap("lingifa") == 777

    def test_rejects_unknown_algorithm(self):
        with pytest.raises(ValueError):
            small_config(algorithms=("ccs", "thompson"))
