"""Benchmark command line: `bench run --config experiment.json [overrides]`.

The config file is JSON mirroring ExperimentConfig field names, with the
channel block mirroring ChannelConfig; command-line flags override file
values.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .channel import ChannelConfig
from .harness import ALL_ALGORITHMS, ExperimentConfig, run_experiment

_ALGO_CHOICES = tuple(ALL_ALGORITHMS) + ("all",)


def load_config(path: str | Path) -> ExperimentConfig:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    channel_raw = dict(raw.pop("channel", {}))
    if "num_tones" not in channel_raw:
        raise ValueError("config channel block must set num_tones")
    channel = ChannelConfig(**channel_raw)
    if "algorithms" in raw:
        raw["algorithms"] = tuple(raw["algorithms"])
    return ExperimentConfig(channel=channel, **raw)


def apply_overrides(config: ExperimentConfig, args: argparse.Namespace) -> ExperimentConfig:
    channel = config.channel
    if args.k is not None:
        channel = dataclasses.replace(channel, num_tones=args.k)
    updates: dict = {"channel": channel}
    if args.out is not None:
        updates["output_dir"] = args.out
    if args.trials is not None:
        updates["trials"] = args.trials
    if args.algo is not None:
        updates["algorithms"] = ALL_ALGORITHMS if args.algo == "all" else (args.algo,)
    if args.challenger_size is not None:
        updates["challenger_size"] = args.challenger_size
    if args.seed is not None:
        updates["seed_base"] = args.seed
    return dataclasses.replace(config, **updates)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="run a benchmark experiment")
    run_p.add_argument("--config", required=True, help="JSON experiment config path")
    run_p.add_argument("--out", default=None, help="output directory (overrides config)")
    run_p.add_argument("--trials", type=int, default=None, help="number of trials")
    run_p.add_argument("--algo", choices=_ALGO_CHOICES, default=None, help="single algorithm or all")
    run_p.add_argument("--k", type=int, default=None, help="number of subcarriers")
    run_p.add_argument("--challenger-size", type=int, default=None, dest="challenger_size")
    run_p.add_argument("--seed", type=int, default=None, help="seed base")
    run_p.add_argument("--quiet", action="store_true", help="suppress per-trial progress")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        config = apply_overrides(load_config(args.config), args)
        records, stats = run_experiment(config, verbose=not args.quiet)
        print(f"wrote {len(records)} rows to {Path(config.output_dir) / 'results.csv'}")
        for s in stats:
            print(
                f"{s.algo:>9} K={s.K} |C|={s.challenger_size}: "
                f"comparisons {s.comparisons_mean:.1f} ± {s.comparisons_std:.1f}, "
                f"pulls {s.pulls_mean:.1f}, correct {s.correctness_rate:.2f}, "
                f"non-converged {s.n_nonconverged}"
            )
        return 0
    return 2


if __name__ == "__main__":
    sys.exit(main())
