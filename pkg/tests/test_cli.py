"""Tests for the bench command line."""

import json

import pytest

from ofdm_bandits import cli
from ofdm_bandits.harness import read_csv


@pytest.fixture
def config_file(tmp_path):
    payload = {
        "channel": {"num_tones": 8, "snr_noise_std_db": 0.0},
        "algorithms": ["ccs"],
        "num_champions": 3,
        "feature_dim": 6,
        "challenger_size": 3,
        "trials": 2,
        "seed_base": 5,
        "output_dir": str(tmp_path / "out"),
        "max_rounds": 20000,
        "reg": 0.01,
    }
    path = tmp_path / "experiment.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


class TestLoadConfig:
    def test_mirrors_field_names(self, config_file):
        config = cli.load_config(config_file)
        assert config.channel.num_tones == 8
        assert config.num_champions == 3
        assert config.algorithms == ("ccs",)

    def test_missing_num_tones_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"channel": {}}), encoding="utf-8")
        with pytest.raises(ValueError):
            cli.load_config(path)


class TestRunCommand:
    def test_end_to_end(self, config_file, tmp_path, capsys):
        out_dir = tmp_path / "cli_out"
        code = cli.main(
            ["run", "--config", str(config_file), "--out", str(out_dir), "--quiet"]
        )
        assert code == 0
        rows = read_csv(out_dir / "results.csv")
        assert len(rows) == 2
        assert all(r.correct for r in rows)  # noiseless instance
        captured = capsys.readouterr()
        assert "ccs" in captured.out

    def test_flag_overrides(self, config_file, tmp_path):
        out_dir = tmp_path / "cli_out2"
        cli.main(
            [
                "run", "--config", str(config_file), "--out", str(out_dir),
                "--trials", "1", "--k", "10", "--challenger-size", "4",
                "--seed", "77", "--algo", "ccs", "--quiet",
            ]
        )
        rows = read_csv(out_dir / "results.csv")
        assert len(rows) == 1
        assert rows[0].K == 10
        assert rows[0].challenger_size == 4
        assert rows[0].seed == 77

    def test_algo_all_expands(self, config_file, tmp_path):
        out_dir = tmp_path / "cli_out3"
        cli.main(
            ["run", "--config", str(config_file), "--out", str(out_dir),
             "--trials", "1", "--algo", "all", "--quiet"]
        )
        rows = read_csv(out_dir / "results.csv")
        assert sorted({r.algo for r in rows}) == ["ccs", "lingape", "lingifa", "linugape"]
