"""Confidence widths, gap indices, and instance-hardness diagnostics.

The width of a pair is the self-normalized ridge confidence radius times the
Mahalanobis norm of the feature difference. The gap index of an ordered pair
(i, j) is mu_hat_i - mu_hat_j + width; every gap-index evaluation goes through
a ComparisonCounter so that per-algorithm comparison budgets are auditable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .design import DesignState


@dataclass(frozen=True)
class ConfidenceConfig:
    """Parameters of the confidence radius.

    sigma is the sub-Gaussian proxy of the reward noise, theta_norm_bound an
    upper bound on ||theta*||_2, feature_norm_bound an upper bound on ||x_a||_2
    (carried for reference; the radius uses the realized Gram determinant).
    """

    delta: float
    sigma: float = 1.0
    reg: float = 1.0
    theta_norm_bound: float = 1.0
    feature_norm_bound: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must be in (0, 1), got {self.delta!r}")
        for name in ("sigma", "reg", "theta_norm_bound", "feature_norm_bound"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class ComparisonCounter:
    """Counts gap-index evaluations; one increment per index computed."""

    count: int = 0

    def add(self, n: int = 1) -> None:
        if n < 0:
            raise ValueError("cannot decrement a comparison counter")
        self.count += n


@dataclass
class InstanceDiagnostics:
    """True per-arm gaps relative to the top-m boundary, plus the top-m set."""

    true_gaps: NDArray[np.float64]
    top_m_set: frozenset[int]
    complexity_h: float | None = field(default=None)


def beta(state: DesignState, conf: ConfidenceConfig) -> float:
    """Self-normalized confidence radius sqrt(reg)*S + sigma*sqrt(2 ln(1/delta) + ln det(V)/reg^d).

    Strictly positive and non-decreasing in the pull count, since rank-one
    updates only grow the Gram determinant. Uses the design's incrementally
    maintained log-determinant.
    """
    log_ratio = max(state.log_det - state.dim * math.log(conf.reg), 0.0)
    return math.sqrt(conf.reg) * conf.theta_norm_bound + conf.sigma * math.sqrt(
        2.0 * math.log(1.0 / conf.delta) + log_ratio
    )


def width(
    state: DesignState,
    x_i,
    x_j,
    conf: ConfidenceConfig,
    radius: float | None = None,
) -> float:
    """Confidence width of the pair: radius * ||x_i - x_j||_{V^{-1}}.

    Symmetric in (i, j) and zero iff x_i == x_j. Pass a precomputed `radius`
    to amortize the determinant across many pairs at the same state.
    """
    x_i = np.asarray(x_i, dtype=float)
    x_j = np.asarray(x_j, dtype=float)
    if radius is None:
        radius = beta(state, conf)
    return radius * state.mahalanobis_norm(x_i - x_j)


def gap_index(mu_hat_i: float, mu_hat_j: float, w: float, counter: ComparisonCounter) -> float:
    """Optimistic estimate mu_hat_i - mu_hat_j + w of how far arm i may exceed arm j."""
    if w < 0:
        raise ValueError("width must be nonnegative")
    counter.add(1)
    return mu_hat_i - mu_hat_j + w


def cross_width_matrix(
    state: DesignState,
    feats_rows: NDArray[np.float64],
    feats_cols: NDArray[np.float64],
    conf: ConfidenceConfig,
    radius: float | None = None,
) -> NDArray[np.float64]:
    """Widths for every (row arm, col arm) pair.

    Evaluates ||x_r - x_c||_{V^{-1}} on the explicit difference of each pair,
    so the cost of a scan is proportional to the number of pairs examined,
    exactly like the per-pair width operation it batches.
    """
    if radius is None:
        radius = beta(state, conf)
    diffs = feats_rows[:, None, :] - feats_cols[None, :, :]
    sq = np.einsum("rcd,de,rce->rc", diffs, state.gram_inv, diffs)
    return radius * np.sqrt(np.maximum(sq, 0.0))


def gap_index_matrix(
    mu_rows: NDArray[np.float64],
    mu_cols: NDArray[np.float64],
    widths: NDArray[np.float64],
    counter: ComparisonCounter,
) -> NDArray[np.float64]:
    """All pairwise gap indices mu_rows[i] - mu_cols[j] + widths[i, j].

    Counts one comparison per entry, exactly as if gap_index had been called
    elementwise.
    """
    if widths.shape != (len(mu_rows), len(mu_cols)):
        raise ValueError("widths shape must match (rows, cols)")
    counter.add(widths.size)
    return mu_rows[:, None] - mu_cols[None, :] + widths


def true_gaps(means, m: int) -> InstanceDiagnostics:
    """Per-arm distance from the top-m boundary.

    An arm in the true top-m set has gap mu(arm) - mu_(m+1); any other arm has
    gap mu_(m) - mu(arm), where mu_(k) is the k-th largest mean. Ties are
    broken by ascending arm index, so the top set is deterministic.
    """
    means = np.asarray(means, dtype=float)
    k = len(means)
    if not 1 <= m < k:
        raise ValueError(f"need 1 <= m < K, got m={m}, K={k}")
    if not np.all(np.isfinite(means)):
        raise ValueError("means must be finite")
    # descending by mean, ascending by index within ties
    order = np.lexsort((np.arange(k), -means))
    top = order[:m]
    mu_m = means[order[m - 1]]
    mu_m_plus_1 = means[order[m]]
    gaps = mu_m - means
    gaps[top] = means[top] - mu_m_plus_1
    return InstanceDiagnostics(true_gaps=gaps, top_m_set=frozenset(int(i) for i in top))


def complexity_h(diag: InstanceDiagnostics, sigma: float, epsilon: float = 0.0) -> float:
    """Instance hardness 4*sigma^2 * sum_a max(eps, (eps + gap_a)/3)^{-2}.

    Infinite when epsilon is zero and some gap is zero (a degenerate instance
    that exact identification cannot resolve).
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    terms = np.maximum(epsilon, (epsilon + diag.true_gaps) / 3.0)
    if np.any(terms == 0.0):
        return math.inf
    return float(4.0 * sigma**2 * np.sum(terms**-2.0))
