"""Reference top-m identification baselines on the shared estimator stack.

All three baselines consume the same environment, ridge design state, width
function, feature-refinement estimator, and comparison counter as the
champion-challenger sampler, so their comparison counts and pull counts are
measured on identical footing. They differ in how broadly they scan pairwise
gap indices each round and in how they choose the arm to pull:

* LinGapE: paired indices over every (outside arm, champion) pair spanning
  the full arm set each round, with a globally greedy variance-reducing pull.
* LinUGapE: sequential gap-UCB elimination with a local greedy pull restricted
  to the selected pair, run on a fixed per-arm exploration budget; its
  comparison schedule is a function of (K, m) alone, independent of rewards.
* LinGIFA: gap indices for all ordered pairs of arms each round, pulling the
  arm with the largest posterior uncertainty across the whole set.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .estimator import DEFAULT_FEATURE_CONFIDENCE, ArmEstimator, pair_deviation
from .gaps import ComparisonCounter, ConfidenceConfig, beta, cross_width_matrix, gap_index_matrix
from .results import TrialResult

LINGAPE = "lingape"
LINUGAPE = "linugape"
LINGIFA = "lingifa"
BASELINE_NAMES = (LINGAPE, LINUGAPE, LINGIFA)

# Fixed-budget depth of LinUGapE's sequential elimination, in rounds per
# (arm, champion slot) pair; the first K rounds are a forced round-robin of
# all arms. Scaling with m keeps the budget commensurate with the number of
# boundary pairs the sequential runs must resolve.
UGAPE_BUDGET_FACTOR = 5.5

DEFAULT_MAX_ROUNDS = 1_000_000


@dataclass(frozen=True)
class BaselineConfig:
    """Shared baseline parameters; same contract as CCSConfig minus the shortlist."""

    algorithm: str
    num_champions: int
    epsilon: float = 1e-15
    delta: float = 0.05
    max_rounds: int = DEFAULT_MAX_ROUNDS

    def __post_init__(self):
        if self.algorithm not in BASELINE_NAMES:
            raise ValueError(f"unknown baseline {self.algorithm!r}, expected one of {BASELINE_NAMES}")
        if self.num_champions < 1:
            raise ValueError("num_champions must be >= 1")
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must be in (0, 1)")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")


def top_m_estimated(mu_hat: NDArray[np.float64], m: int) -> NDArray[np.intp]:
    """Indices of the m largest estimates, ascending index within ties."""
    order = np.lexsort((np.arange(len(mu_hat)), -mu_hat))
    return order[:m]


def _result(name, estimator, counter, tau, start, converged, mu_hat, m) -> TrialResult:
    selected = tuple(sorted(int(a) for a in top_m_estimated(mu_hat, m)))
    return TrialResult(
        algorithm=name,
        selected_set=selected,
        pulls=estimator.design.pulls,
        comparisons=counter.count,
        tau=tau,
        wall_time_ms=(time.perf_counter() - start) * 1e3,
        converged=converged,
    )


def _argmax_ambiguous(indices: NDArray, rows: NDArray, cols: NDArray) -> tuple[int, int, float]:
    """Arm pair maximizing an index matrix; lowest (row, col) arm indices on ties."""
    best = float(indices.max())
    tie_r, tie_c = np.nonzero(indices == best)
    pairs = sorted((int(rows[r]), int(cols[c])) for r, c in zip(tie_r, tie_c))
    row_arm, col_arm = pairs[0]
    return row_arm, col_arm, best


def _greedy_pull(
    estimator: ArmEstimator,
    candidates: NDArray[np.intp],
    pair: tuple[int, int],
    radius: float,
    feature_dev: NDArray[np.float64],
) -> int:
    """Candidate whose virtual pull most shrinks the pair's total uncertainty.

    Same objective as the champion-challenger pull rule: virtually updated
    design norm of the pair direction plus the pair's measured-SNR deviations,
    accounting for the reduction when the pulled arm is one of the pair.
    """
    i, j = pair
    features = estimator.features
    design = estimator.design
    v = features[i] - features[j]
    inv_v = design.gram_inv @ v
    q_vv = float(v @ inv_v)
    cand_feats = features[candidates]
    alpha = cand_feats @ inv_v
    s = np.einsum("ij,ij->i", cand_feats @ design.gram_inv, cand_feats)
    design_term = np.sqrt(np.maximum(q_vv - alpha**2 / (1.0 + s), 0.0))
    extra = np.full(len(candidates), float(np.hypot(feature_dev[i], feature_dev[j])))
    after = estimator.feature_uncertainty_if_pulled(np.array([i, j]))
    extra[candidates == i] = np.hypot(after[0], feature_dev[j])
    extra[candidates == j] = np.hypot(feature_dev[i], after[1])
    return int(candidates[int(np.argmin(radius * design_term + extra))])


def run_lingape(
    env,
    config: BaselineConfig,
    conf: ConfidenceConfig,
    rng,
    feature_confidence: float = DEFAULT_FEATURE_CONFIDENCE,
) -> TrialResult:
    """Paired-index top-m identification with a global greedy pull rule.

    Each round scans B(c, u) for every arm c outside the estimated top-m set
    against every champion u (m*(K-m) index evaluations spanning the full arm
    set), stops when the most ambiguous pair's index is at most epsilon, and
    otherwise pulls the arm anywhere in [K] that most shrinks that pair's
    uncertainty.
    """
    start = time.perf_counter()
    k, m = env.num_arms, config.num_champions
    estimator = ArmEstimator(env, reg=conf.reg, feature_confidence=feature_confidence)
    features = estimator.features
    counter = ComparisonCounter()
    mu_hat = np.zeros(k)
    all_arms = np.arange(k)

    converged = False
    tau = 0
    for t in range(1, config.max_rounds + 1):
        tau = t
        champions = top_m_estimated(mu_hat, m)
        complement = np.setdiff1d(all_arms, champions, assume_unique=True)
        radius = beta(estimator.design, conf)
        feature_dev = estimator.feature_uncertainty()
        widths = cross_width_matrix(
            estimator.design, features[complement], features[champions], conf, radius=radius
        )
        widths = widths + pair_deviation(feature_dev[complement], feature_dev[champions])
        indices = gap_index_matrix(mu_hat[complement], mu_hat[champions], widths, counter)
        c_t, b_t, best = _argmax_ambiguous(indices, complement, champions)
        if best <= config.epsilon:
            converged = True
            break
        arm = _greedy_pull(estimator, all_arms, (b_t, c_t), radius, feature_dev)
        estimator.pull(arm)
        mu_hat = estimator.mu_hat()

    return _result(LINGAPE, estimator, counter, tau, start, converged, mu_hat, m)


def ugape_budget_rounds(k: int, m: int) -> int:
    """Deterministic exploration budget; depends only on (K, m)."""
    return int(math.ceil(UGAPE_BUDGET_FACTOR * k * m))


def run_linugape(
    env,
    config: BaselineConfig,
    conf: ConfidenceConfig,
    rng,
    feature_confidence: float = DEFAULT_FEATURE_CONFIDENCE,
) -> TrialResult:
    """Gap-UCB elimination with a fixed per-arm budget and local greedy pulls.

    Each round evaluates K gap indices: every outside arm against the weakest
    champion, then the resulting strongest challenger against every champion.
    The first K rounds force one pull of every arm; afterwards the more
    uncertain of the selected pair is pulled. The schedule length depends only
    on (K, m), so the comparison count is identical across trials.
    """
    start = time.perf_counter()
    k, m = env.num_arms, config.num_champions
    estimator = ArmEstimator(env, reg=conf.reg, feature_confidence=feature_confidence)
    features = estimator.features
    counter = ComparisonCounter()
    mu_hat = np.zeros(k)
    all_arms = np.arange(k)

    budget = ugape_budget_rounds(k, m)
    for t in range(1, budget + 1):
        champions = top_m_estimated(mu_hat, m)
        complement = np.setdiff1d(all_arms, champions, assume_unique=True)
        radius = beta(estimator.design, conf)
        feature_dev = estimator.feature_uncertainty()

        # weakest champion is the boundary pivot
        weakest = int(champions[np.lexsort((champions, mu_hat[champions]))[0]])
        w_out = cross_width_matrix(
            estimator.design, features[complement], features[weakest][None, :], conf, radius=radius
        )[:, 0]
        w_out = w_out + np.hypot(feature_dev[complement], feature_dev[weakest])
        b_out = gap_index_matrix(
            mu_hat[complement], mu_hat[weakest : weakest + 1], w_out[:, None], counter
        )[:, 0]
        u_t = int(complement[int(np.lexsort((complement, -b_out))[0])])

        # champion most threatened by that challenger
        w_in = cross_width_matrix(
            estimator.design, features[u_t][None, :], features[champions], conf, radius=radius
        )[0, :]
        w_in = w_in + np.hypot(feature_dev[u_t], feature_dev[champions])
        b_in = gap_index_matrix(
            mu_hat[u_t : u_t + 1], mu_hat[champions], w_in[None, :], counter
        )[0, :]
        l_t = int(champions[int(np.lexsort((champions, -b_in))[0])])

        if t <= k:
            arm = t - 1  # forced round-robin sweep
        else:
            unc_u = radius * estimator.design.mahalanobis_norm(features[u_t]) + feature_dev[u_t]
            unc_l = radius * estimator.design.mahalanobis_norm(features[l_t]) + feature_dev[l_t]
            if unc_u > unc_l:
                arm = u_t
            elif unc_l > unc_u:
                arm = l_t
            else:
                arm = min(u_t, l_t)
        estimator.pull(arm)
        mu_hat = estimator.mu_hat()

    return _result(LINUGAPE, estimator, counter, budget, start, True, mu_hat, m)


def run_lingifa(
    env,
    config: BaselineConfig,
    conf: ConfidenceConfig,
    rng,
    feature_confidence: float = DEFAULT_FEATURE_CONFIDENCE,
) -> TrialResult:
    """All-pairs gap indices with a largest-uncertainty-across-the-set pull rule.

    Every round evaluates B(i, j) for all K*(K-1) ordered pairs, stops when no
    outside arm holds an index above epsilon against any champion, and pulls
    the arm with the largest posterior uncertainty among all K, spreading
    samples to shrink uncertainty across the whole set rather than one pair.
    """
    start = time.perf_counter()
    k, m = env.num_arms, config.num_champions
    estimator = ArmEstimator(env, reg=conf.reg, feature_confidence=feature_confidence)
    features = estimator.features
    counter = ComparisonCounter()
    mu_hat = np.zeros(k)
    all_arms = np.arange(k)

    converged = False
    tau = 0
    for t in range(1, config.max_rounds + 1):
        tau = t
        radius = beta(estimator.design, conf)
        feature_dev = estimator.feature_uncertainty()
        q_diag = np.einsum("ij,ij->i", features @ estimator.design.gram_inv, features)
        widths = cross_width_matrix(estimator.design, features, features, conf, radius=radius)
        widths = widths + pair_deviation(feature_dev, feature_dev)
        indices = mu_hat[:, None] - mu_hat[None, :] + widths
        counter.add(k * (k - 1))  # every ordered pair, diagonal excluded

        champions = top_m_estimated(mu_hat, m)
        complement = np.setdiff1d(all_arms, champions, assume_unique=True)
        boundary = indices[np.ix_(complement, champions)]
        _, _, best = _argmax_ambiguous(boundary, complement, champions)
        if best <= config.epsilon:
            converged = True
            break
        arm = int(np.argmax(radius * np.sqrt(np.maximum(q_diag, 0.0)) + feature_dev))
        estimator.pull(arm)
        mu_hat = estimator.mu_hat()

    return _result(LINGIFA, estimator, counter, tau, start, converged, mu_hat, m)


_RUNNERS = {LINGAPE: run_lingape, LINUGAPE: run_linugape, LINGIFA: run_lingifa}


def run_baseline(
    env,
    config: BaselineConfig,
    conf: ConfidenceConfig,
    rng,
    feature_confidence: float = DEFAULT_FEATURE_CONFIDENCE,
) -> TrialResult:
    """Dispatch to the configured baseline."""
    return _RUNNERS[config.algorithm](env, config, conf, rng, feature_confidence=feature_confidence)
