"""Regularized least-squares design state with incremental rank-one updates.

Every confidence width and pull rule in this library reduces to a Mahalanobis
norm in the inverse of the regularized Gram matrix, so the inverse is kept
current after each observation via the Sherman-Morrison identity instead of
refactorizing on demand.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

# Sherman-Morrison denominators below this are treated as degenerate and the
# inverse is rebuilt by direct factorization instead.
SM_DENOMINATOR_FLOOR = 1e-12

# Long runs accumulate floating-point drift in the incremental inverse;
# rebuild it directly every this many updates.
REPAIR_INTERVAL = 1024


class DesignState:
    """Ridge regression state V = reg*I + sum(x x^T) with a cached inverse.

    Attributes:
        dim: feature dimension d
        reg: ridge weight (> 0)
        gram: d x d design matrix V
        gram_inv: cached V^{-1}, maintained incrementally
        resp: response accumulator b = sum(y * x)
        theta_hat: current estimate V^{-1} b
        pulls: number of rank-one updates applied since initialization
    """

    def __init__(self, dim: int, reg: float = 1.0):
        if int(dim) != dim or dim < 1:
            raise ValueError(f"dim must be a positive integer, got {dim!r}")
        if not np.isfinite(reg) or reg <= 0:
            raise ValueError(f"reg must be a positive real, got {reg!r}")
        self.dim = int(dim)
        self.reg = float(reg)
        self.gram: NDArray[np.float64] = self.reg * np.eye(self.dim)
        self.gram_inv: NDArray[np.float64] = (1.0 / self.reg) * np.eye(self.dim)
        self.resp: NDArray[np.float64] = np.zeros(self.dim)
        self.theta_hat: NDArray[np.float64] = np.zeros(self.dim)
        self.log_det: float = self.dim * np.log(self.reg)
        self.pulls = 0

    def _as_vector(self, v, name: str) -> NDArray[np.float64]:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,):
            raise ValueError(f"{name} must have shape ({self.dim},), got {v.shape}")
        return v

    def rank_one_update(self, x, y: float) -> None:
        """Absorb one observation (x, y): V += x x^T, b += y x, refresh theta_hat."""
        x = self._as_vector(x, "x")
        if not np.all(np.isfinite(x)) or not np.isfinite(y):
            raise ValueError("rank_one_update requires finite x and y")

        self.gram += np.outer(x, x)
        self.resp += y * x
        self.pulls += 1

        vx = self.gram_inv @ x
        denom = 1.0 + float(x @ vx)
        if denom < SM_DENOMINATOR_FLOOR or self.pulls % REPAIR_INTERVAL == 0:
            self.refactorize()
        else:
            self.log_det += np.log(denom)
            self.gram_inv -= np.outer(vx, vx) / denom
            # symmetrize to stop round-off from breaking the SPD structure
            self.gram_inv = 0.5 * (self.gram_inv + self.gram_inv.T)
        self.theta_hat = self.gram_inv @ self.resp

    def refactorize(self) -> None:
        """Rebuild gram_inv, log_det, and theta_hat from gram directly."""
        self.gram_inv = np.linalg.inv(self.gram)
        self.gram_inv = 0.5 * (self.gram_inv + self.gram_inv.T)
        sign, self.log_det = np.linalg.slogdet(self.gram)
        if sign <= 0:
            raise FloatingPointError("design Gram matrix lost positive definiteness")
        self.theta_hat = self.gram_inv @ self.resp

    def _rank_one_inverse(self, x: NDArray[np.float64], weight: float) -> bool:
        """Apply (V + weight*x x^T)^{-1} in place; False if degenerate.

        weight may be negative (a downdate); the caller guarantees the result
        stays positive definite, and a near-zero denominator falls back to
        direct refactorization.
        """
        vx = self.gram_inv @ x
        denom = 1.0 + weight * float(x @ vx)
        if denom < SM_DENOMINATOR_FLOOR:
            return False
        self.log_det += np.log(denom)
        self.gram_inv -= np.outer(vx, vx) * (weight / denom)
        self.gram_inv = 0.5 * (self.gram_inv + self.gram_inv.T)
        return True

    def inverse_residual(self) -> float:
        """Frobenius norm of (gram @ gram_inv - I); on-demand drift check."""
        return float(np.linalg.norm(self.gram @ self.gram_inv - np.eye(self.dim)))

    def migrate_weighted_row(self, x_old, x_new, count: int, reward_sum: float) -> None:
        """Move `count` past observations of one arm from x_old to x_new.

        Replaces count copies of x_old (whose rewards sum to reward_sum) with
        x_new in both the Gram matrix and the response accumulator, as if the
        history had been recorded against the new row all along. Does not
        change the pull count. The inverse is carried through one rank-one
        downdate plus one rank-one update; degenerate steps fall back to
        direct refactorization.
        """
        x_old = self._as_vector(x_old, "x_old")
        x_new = self._as_vector(x_new, "x_new")
        if count < 0:
            raise ValueError("count must be nonnegative")
        if count == 0 or np.array_equal(x_old, x_new):
            return
        self.gram += count * (np.outer(x_new, x_new) - np.outer(x_old, x_old))
        self.resp += reward_sum * (x_new - x_old)
        ok = self._rank_one_inverse(x_new, float(count))
        if ok:
            ok = self._rank_one_inverse(x_old, -float(count))
        if not ok:
            self.refactorize()
        else:
            self.theta_hat = self.gram_inv @ self.resp

    def mahalanobis_norm(self, v) -> float:
        """sqrt(v^T V^{-1} v); zero iff v is the zero vector."""
        v = self._as_vector(v, "v")
        q = float(v @ self.gram_inv @ v)
        return float(np.sqrt(max(q, 0.0)))

    def norm_with_virtual_pull(self, v, x) -> float:
        """Norm of v in the metric of (V + x x^T)^{-1}, without mutating state.

        Computed through the Sherman-Morrison identity, so it never exceeds
        mahalanobis_norm(v).
        """
        v = self._as_vector(v, "v")
        x = self._as_vector(x, "x")
        inv_v = self.gram_inv @ v
        q_vv = float(v @ inv_v)
        q_xv = float(x @ inv_v)
        q_xx = float(x @ self.gram_inv @ x)
        q = q_vv - q_xv * q_xv / (1.0 + q_xx)
        return float(np.sqrt(max(q, 0.0)))

    def predict(self, features) -> NDArray[np.float64]:
        """Estimated means features @ theta_hat for a K x dim feature matrix."""
        features = np.asarray(features, dtype=float)
        return features @ self.theta_hat
