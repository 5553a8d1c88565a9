"""Per-BS bandwidth allocation under heterogeneous alpha-fairness.

For a fixed association, each BS solves an independent concave program over
its own users' bandwidth fractions. The KKT conditions reduce it to a single
scalar root-find per BS: find lam > 0 with

    sum_{i in I_j} gamma_hat_ij * lam^(-1/alpha_i)  =  1,

after which y_ij = gamma_hat_ij * lam^(-1/alpha_i). The left side is strictly
decreasing in lam (+inf at 0+, -> 0 at inf), so the root is unique.

Two solvers are provided: a decimal digit search that refines lam one digit at
a time from a coarse initial step, and a bracketing bisection (the production
default, with a deterministic relative tolerance).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .core import Allocation, Association, NetworkInstance, utility_vector


@dataclass(frozen=True)
class LambdaSearchConfig:
    initial_step: float = 1e3
    outer_iters: int = 12
    inner_iters: int = 10
    bisect_tol: float = 1e-10  # relative bracket width at termination


class EmptyBSError(ValueError):
    """Raised when a multiplier is requested for a BS with no users."""


_DEFAULT = LambdaSearchConfig()


def _bs_terms(inst: NetworkInstance, assoc: Association, j: int) -> Tuple[List[float], List[float]]:
    """Python-float gains and exponents of BS j's users (hot-path friendly)."""
    users = np.flatnonzero(np.asarray(assoc.bs_of_user) == j)
    if users.size == 0:
        raise EmptyBSError(f"BS {j} has no associated users")
    gh = inst.gamma_hat[users, j].tolist()
    inv_alpha = (1.0 / inst.alphas.alpha[users]).tolist()
    return gh, inv_alpha


def _load(gh: Sequence[float], inv_alpha: Sequence[float], lam: float) -> float:
    s = 0.0
    for g, a in zip(gh, inv_alpha):
        s += g * lam ** (-a)
    return s


def kkt_residual(inst: NetworkInstance, assoc: Association, j: int, lam: float) -> float:
    """sum_i gamma_hat_ij lam^(-1/alpha_i) - 1 over BS j's users.

    Zero at the optimal multiplier; strictly decreasing in lam.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    gh, ia = _bs_terms(inst, assoc, j)
    return _load(gh, ia, float(lam)) - 1.0


def _digit_search(gh: Sequence[float], inv_alpha: Sequence[float], cfg: LambdaSearchConfig) -> float:
    """Decimal digit search for the multiplier.

    Starts at lam = 0 with a coarse step; keeps adding the step while the
    load stays above 1, retracting and shrinking the step tenfold on each
    overshoot; after every inner sweep one extra step is probed. Every probe
    (the extra one included) is subject to the same retract-and-shrink rule,
    so lam never ends above the root; an unconditional trailing add would park
    lam one coarse step past the root with no way back down.
    """
    lam = 0.0
    step = float(cfg.initial_step)

    def probe() -> None:
        nonlocal lam, step
        lam += step
        if 1.0 > _load(gh, inv_alpha, lam):
            lam -= step
            step /= 10.0

    for _ in range(cfg.outer_iters):
        for _ in range(cfg.inner_iters):
            probe()
        probe()
    return lam


def _bisect(gh: Sequence[float], inv_alpha: Sequence[float], tol: float) -> float:
    """Bracket the root by doubling/halving from lam = 1, then bisect."""
    r0 = _load(gh, inv_alpha, 1.0) - 1.0
    if r0 == 0.0:
        return 1.0
    if r0 > 0.0:  # load too high -> root above 1
        lo, hi = 1.0, 2.0
        for _ in range(400):
            if _load(gh, inv_alpha, hi) - 1.0 <= 0.0:
                break
            lo, hi = hi, hi * 2.0
        else:
            raise ArithmeticError("failed to bracket multiplier from above")
    else:
        lo, hi = 0.5, 1.0
        for _ in range(400):
            if _load(gh, inv_alpha, lo) - 1.0 >= 0.0:
                break
            lo, hi = lo * 0.5, lo
        else:
            raise ArithmeticError("failed to bracket multiplier from below")
    mid = 0.5 * (lo + hi)
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol * mid or mid == lo or mid == hi:
            break
        if _load(gh, inv_alpha, mid) - 1.0 >= 0.0:
            lo = mid
        else:
            hi = mid
    return mid


def solve_lambda_digit(
    inst: NetworkInstance, assoc: Association, j: int, cfg: Optional[LambdaSearchConfig] = None
) -> float:
    """Digit-search multiplier for BS j. Raises EmptyBSError if j is empty."""
    cfg = cfg or _DEFAULT
    gh, ia = _bs_terms(inst, assoc, j)
    return _digit_search(gh, ia, cfg)


def solve_lambda_bisect(
    inst: NetworkInstance, assoc: Association, j: int, cfg: Optional[LambdaSearchConfig] = None
) -> float:
    """Bisection multiplier for BS j, |kkt_residual| <= ~1e-8 at return."""
    cfg = cfg or _DEFAULT
    gh, ia = _bs_terms(inst, assoc, j)
    return _bisect(gh, ia, cfg.bisect_tol)


def allocate(
    inst: NetworkInstance,
    assoc: Association,
    cfg: Optional[LambdaSearchConfig] = None,
    solver: str = "bisect",
) -> Allocation:
    """Optimal bandwidth fractions for every BS under a fixed association.

    Per-BS problems are independent. Empty BSs get a NaN multiplier and a
    zero column. y_ij = gamma_hat_ij * lam_j^(-1/alpha_i) on associated pairs.
    """
    cfg = cfg or _DEFAULT
    if solver not in ("bisect", "digit"):
        raise ValueError(f"unknown solver {solver!r}")
    I, J = inst.num_users, inst.num_bs
    bs = np.asarray(assoc.bs_of_user, dtype=int)
    if bs.shape[0] != I:
        raise ValueError("association length must match the instance")
    if np.any(bs < 0) or np.any(bs >= J):
        raise ValueError("association refers to a BS outside the instance")
    y = np.zeros((I, J))
    lam = np.full(J, np.nan)
    alpha = inst.alphas.alpha
    for j in range(J):
        users = np.flatnonzero(bs == j)
        if users.size == 0:
            continue
        gh_list = inst.gamma_hat[users, j].tolist()
        ia_list = (1.0 / alpha[users]).tolist()
        if solver == "bisect":
            lam_j = _bisect(gh_list, ia_list, cfg.bisect_tol)
        else:
            lam_j = _digit_search(gh_list, ia_list, cfg)
        lam[j] = lam_j
        y[users, j] = inst.gamma_hat[users, j] * lam_j ** (-1.0 / alpha[users])
    return Allocation(y=y, lam=lam)


def bs_optimal_utility(
    inst: NetworkInstance,
    j: int,
    users: np.ndarray,
    cfg: Optional[LambdaSearchConfig] = None,
) -> Tuple[float, float]:
    """Optimal HAF contribution of serving `users` from BS j: (utility, lam).

    Empty user sets contribute (0.0, nan). Utilities use the same rate floor
    as the global objective, so per-BS sums match haf_objective exactly.
    """
    cfg = cfg or _DEFAULT
    users = np.asarray(users, dtype=int)
    if users.size == 0:
        return 0.0, float("nan")
    gh = inst.gamma_hat[users, j]
    alpha = inst.alphas.alpha[users]
    lam_j = _bisect(gh.tolist(), (1.0 / alpha).tolist(), cfg.bisect_tol)
    y = gh * lam_j ** (-1.0 / alpha)
    rates = inst.gamma[users, j] * y
    return float(np.sum(utility_vector(rates, alpha))), lam_j
