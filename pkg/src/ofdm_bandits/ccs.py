"""Champion-challenger sampling for top-m identification in linear bandits.

The algorithm keeps a champion set U_t (current top-m estimate) and a rotating
challenger shortlist C_t of the strongest arms outside it. Each round it
re-ranks the shortlists, finds the most ambiguous champion/challenger pair by
gap index over C_t x U_t only, and either stops (the best challenger cannot
beat any champion by more than epsilon) or pulls the arm whose virtual update
most shrinks the ambiguous direction.

Confining the index search to the shortlist is what keeps the per-round work
at m*|C_t| comparisons instead of a scan across all K arms.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .design import DesignState
from .estimator import DEFAULT_FEATURE_CONFIDENCE, ArmEstimator, pair_deviation
from .gaps import ComparisonCounter, ConfidenceConfig, beta, cross_width_matrix, gap_index_matrix
from .results import TrialResult

ALGORITHM_NAME = "ccs"

DEFAULT_MAX_ROUNDS = 1_000_000


@dataclass(frozen=True)
class CCSConfig:
    """Champion count m, challenger shortlist size, and stopping parameters."""

    num_champions: int
    challenger_size: int
    epsilon: float = 1e-15
    delta: float = 0.05
    max_rounds: int = DEFAULT_MAX_ROUNDS

    def __post_init__(self):
        if self.num_champions < 1:
            raise ValueError("num_champions must be >= 1")
        if self.challenger_size < 1:
            raise ValueError("challenger_size must be >= 1")
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must be in (0, 1)")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")


@dataclass
class ShortlistState:
    """Mutable per-trial state: shortlists, design, and current estimates."""

    champions: list[int]
    challengers: list[int]
    design: DesignState
    mu_hat: NDArray[np.float64]
    round_index: int = 0
    b_t: int | None = field(default=None)
    ca_t: int | None = field(default=None)

    def assert_invariants(self, num_champions: int, num_arms: int) -> None:
        u, c = set(self.champions), set(self.challengers)
        assert len(u) == len(self.champions) == num_champions
        assert len(c) == len(self.challengers)
        assert not (u & c), "champion and challenger sets must be disjoint"
        assert u | c <= set(range(num_arms))


def init_shortlists(
    env, config: CCSConfig, rng: np.random.Generator, reg: float = 1.0
) -> ShortlistState:
    """Cold-start shortlists from a random direction on the unit sphere.

    A random theta ranks all arms through the linear surrogate; the top m
    become champions and the next challenger_size arms the shortlist. No
    forced exploration pulls are spent.
    """
    k = env.num_arms
    if config.num_champions > k:
        raise ValueError(f"num_champions={config.num_champions} exceeds K={k}")
    theta = rng.normal(size=env.feature_dim)
    norm = float(np.linalg.norm(theta))
    if norm > 0:
        theta /= norm
    mu_random = env.features @ theta

    order = rank_descending(mu_random)
    m = config.num_champions
    m_prime = min(config.challenger_size, k - m)
    design = DesignState(env.feature_dim, reg=reg)
    return ShortlistState(
        champions=[int(a) for a in order[:m]],
        challengers=[int(a) for a in order[m : m + m_prime]],
        design=design,
        mu_hat=mu_random,
    )


def rank_descending(values: NDArray[np.float64]) -> NDArray[np.intp]:
    """Arm indices by descending value, ascending index within ties."""
    return np.lexsort((np.arange(len(values)), -values))


def update_champions(state: ShortlistState) -> None:
    """Swap the weakest champion for the strongest challenger if strictly better.

    Strict inequality: ties never swap, which prevents churn on equal
    estimates. The champion multiset of estimates can only improve.
    """
    if not state.challengers:
        return
    mu = state.mu_hat
    worst_pos = min(range(len(state.champions)), key=lambda p: (mu[state.champions[p]], state.champions[p]))
    best_pos = min(range(len(state.challengers)), key=lambda p: (-mu[state.challengers[p]], state.challengers[p]))
    worst, best = state.champions[worst_pos], state.challengers[best_pos]
    if mu[best] > mu[worst]:
        state.champions[worst_pos] = best
        state.challengers[best_pos] = worst


def rotate_challengers(
    state: ShortlistState,
    challenger_size: int,
    optimism: NDArray[np.float64] | None = None,
) -> None:
    """Refill the shortlist with the top arms outside the champion set.

    This subsumes carrying over still-competitive members of the previous
    shortlist: any of them that ranks in the complement's top challenger_size
    re-enters, so U_t plus C_t stays a high-reward set.

    With per-arm `optimism` (the measured-SNR deviation bound), arms are
    ranked by estimate plus optimism: an under-observed arm whose placement
    might still beat a champion rotates in and gets examined instead of being
    silently left uncertified outside the shortlist.
    """
    mu = state.mu_hat if optimism is None else state.mu_hat + optimism
    champions = set(state.champions)
    complement = np.array([a for a in range(len(mu)) if a not in champions], dtype=int)
    if len(complement) == 0:
        state.challengers = []
        return
    order = np.lexsort((complement, -mu[complement]))
    take = min(challenger_size, len(complement))
    state.challengers = [int(complement[i]) for i in order[:take]]


def select_ambiguous_pair(
    state: ShortlistState,
    features: NDArray[np.float64],
    conf: ConfidenceConfig,
    counter: ComparisonCounter,
    feature_dev: NDArray[np.float64] | None = None,
    radius: float | None = None,
) -> tuple[int, int, float]:
    """Most ambiguous (champion b_t, challenger ca_t) pair by gap index.

    Evaluates B(c, u) for every challenger/champion pair (exactly
    |C_t| * |U_t| counter increments) and maximizes; ties resolve to the
    lowest (challenger, champion) arm indices. When per-arm feature
    deviations are supplied (noisy-SNR environments), each pair's width is
    their sum plus the design width. Returns (b_t, ca_t, max B).
    """
    if not state.challengers:
        raise ValueError("challenger set is empty")
    chal = np.array(state.challengers, dtype=int)
    champ = np.array(state.champions, dtype=int)
    widths = cross_width_matrix(state.design, features[chal], features[champ], conf, radius=radius)
    if feature_dev is not None:
        widths = widths + pair_deviation(feature_dev[chal], feature_dev[champ])
    indices = gap_index_matrix(state.mu_hat[chal], state.mu_hat[champ], widths, counter)

    best = float(indices.max())
    tie_rows, tie_cols = np.nonzero(indices == best)
    pairs = sorted((int(chal[r]), int(champ[c])) for r, c in zip(tie_rows, tie_cols))
    ca_t, b_t = pairs[0]
    state.b_t, state.ca_t = b_t, ca_t
    return b_t, ca_t, best


def select_arm(
    state: ShortlistState,
    features: NDArray[np.float64],
    pair: tuple[int, int],
    radius: float = 1.0,
    feature_dev: NDArray[np.float64] | None = None,
    feature_dev_after: NDArray[np.float64] | None = None,
) -> int:
    """Largest-variance pull: the candidate whose virtual update most shrinks
    the ambiguous pair's total uncertainty.

    The design part is the norm of x_{b_t} - x_{ca_t} under the virtually
    updated metric; with feature deviations present, pulling b_t or ca_t
    itself also shrinks that arm's measured-SNR term, and the objective
    accounts for it. Candidates are C_t union U_t; ties resolve to the lowest
    arm index.
    """
    b_t, ca_t = pair
    candidates = sorted(set(state.champions) | set(state.challengers))
    v = features[b_t] - features[ca_t]
    inv = state.design.gram_inv
    inv_v = inv @ v
    q_vv = float(v @ inv_v)
    cand_feats = features[candidates]
    alpha = cand_feats @ inv_v
    s = np.einsum("ij,ij->i", cand_feats @ inv, cand_feats)
    design_term = np.sqrt(np.maximum(q_vv - alpha**2 / (1.0 + s), 0.0))
    objective = radius * design_term
    if feature_dev is not None and feature_dev_after is not None:
        cand_arr = np.array(candidates, dtype=int)
        extra = np.full(len(candidates), float(np.hypot(feature_dev[b_t], feature_dev[ca_t])))
        extra[cand_arr == b_t] = np.hypot(feature_dev_after[b_t], feature_dev[ca_t])
        extra[cand_arr == ca_t] = np.hypot(feature_dev[b_t], feature_dev_after[ca_t])
        objective = objective + extra
    return candidates[int(np.argmin(objective))]


def run(
    env,
    config: CCSConfig,
    conf: ConfidenceConfig,
    rng: np.random.Generator,
    check_invariants: bool = False,
    feature_confidence: float = DEFAULT_FEATURE_CONFIDENCE,
) -> TrialResult:
    """Full identification episode; returns the champion set at stopping.

    Each round: re-rank shortlists, find the most ambiguous pair, stop if its
    gap index is at most epsilon, otherwise pull one arm and refresh the
    estimates for all K arms. Hitting max_rounds flags the result as
    non-converged rather than incorrect.
    """
    start = time.perf_counter()
    counter = ComparisonCounter()
    estimator = ArmEstimator(env, reg=conf.reg, feature_confidence=feature_confidence)
    state = init_shortlists(env, config, rng, reg=conf.reg)
    state.design = estimator.design
    features = estimator.features  # mutated in place as SNR averages sharpen

    converged = False
    tau = 0
    all_arms = np.arange(env.num_arms)
    if state.challengers:
        for t in range(1, config.max_rounds + 1):
            update_champions(state)
            feature_dev = estimator.feature_uncertainty()
            rotate_challengers(state, config.challenger_size, optimism=feature_dev)
            if check_invariants:
                state.assert_invariants(config.num_champions, env.num_arms)
            radius = beta(state.design, conf)
            b_t, ca_t, best_index = select_ambiguous_pair(
                state, features, conf, counter, feature_dev=feature_dev, radius=radius
            )
            tau = t
            if best_index <= config.epsilon:
                converged = True
                break
            arm = select_arm(
                state,
                features,
                (b_t, ca_t),
                radius=radius,
                feature_dev=feature_dev,
                feature_dev_after=estimator.feature_uncertainty_if_pulled(all_arms),
            )
            estimator.pull(arm)
            state.mu_hat = estimator.mu_hat()
            state.round_index = t
    else:
        # K == m: every arm is a champion and there is nothing to identify
        converged = True

    elapsed_ms = (time.perf_counter() - start) * 1e3
    return TrialResult(
        algorithm=ALGORITHM_NAME,
        selected_set=tuple(sorted(state.champions)),
        pulls=state.design.pulls,
        comparisons=counter.count,
        tau=tau,
        wall_time_ms=elapsed_ms,
        converged=converged,
    )
