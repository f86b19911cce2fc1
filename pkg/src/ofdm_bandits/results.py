"""Per-trial outcome record shared by all identification algorithms."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class TrialResult:
    """Outcome of one identification run.

    trial_id and correct are filled in by the benchmark harness, which owns
    the trial numbering and the correctness oracle; algorithms report the
    rest. A non-converged run (round cap hit) is distinct from an incorrect
    one and is never marked correct.
    """

    algorithm: str
    selected_set: tuple[int, ...]
    pulls: int
    comparisons: int
    tau: int
    wall_time_ms: float
    converged: bool
    trial_id: int = 0
    correct: bool = field(default=False)

    def __post_init__(self):
        if self.comparisons < 0 or self.pulls < 0 or self.tau < 0:
            raise ValueError("pulls, comparisons and tau must be nonnegative")
        if self.correct and not self.converged:
            raise ValueError("a non-converged trial cannot be correct")
