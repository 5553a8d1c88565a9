"""Distributed pricing for joint association and bandwidth allocation.

The association constraint is relaxed through per-BS prices mu_j. Each
iteration alternates two stages:

  1. every BS solves its own bandwidth allocation for the current association
     and nudges its price along the (negative) load subgradient
         mu_j <- [ mu_j - eta_t (1 - sum_{i in I_j} gamma_hat_ij mu_j^(-1/alpha_i)) ]
     projected onto [mu_min, mu_max];
  2. every user re-associates to argmax_j gamma_ij / mu_j.

The dual function

    g(mu) = sum_j mu_j + sum_i max_j (alpha_i/(1-alpha_i)) gamma_hat_ij mu_j^((alpha_i-1)/alpha_i)

upper-bounds the HAF value of every feasible decision, so any price vector
certifies solution quality: the run keeps the best primal iterate and reports
the gap to the best dual value, together with an analytic bound on that gap
evaluated at the best-dual prices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple, Union

import numpy as np

from . import ra
from .core import Allocation, Association, NetworkInstance, PriceVector, haf_objective

MuLike = Union[PriceVector, np.ndarray]


@dataclass(frozen=True)
class PricingConfig:
    total_iters: int = 500
    eta0: float = 0.05
    eta_schedule: str = "diminishing"  # eta0 / sqrt(t), or "constant"
    mu_init: float = 1.0
    mu_min: float = 1e-8
    mu_max: float = 1e12

    def eta_at(self, t: int) -> float:
        if self.eta_schedule == "constant":
            return self.eta0
        if self.eta_schedule == "diminishing":
            return self.eta0 / math.sqrt(t)
        raise ValueError(f"unknown eta schedule {self.eta_schedule!r}")


@dataclass(frozen=True)
class GapCertificate:
    """Duality-gap certificate at the best dual iterate.

    empirical_gap = best dual - best primal (>= 0 up to solver tolerance);
    theorem2_bound is the analytic gap bound at lambda_star = best-dual prices
    and lambda_hat = allocation multipliers of the induced association.
    """

    theorem2_bound: float
    empirical_gap: float
    lambda_star: PriceVector
    lambda_hat: np.ndarray


@dataclass
class RunTrace:
    """Per-iteration record of one pricing run (arrays of length T)."""

    primal: np.ndarray
    dual: np.ndarray
    mu: np.ndarray  # (T, J) prices *before* the iteration's update
    assoc_changes: np.ndarray
    grad_norm: np.ndarray
    mu_final: np.ndarray  # prices after the last update (warm-start handle)
    certificate: Optional[GapCertificate] = None

    def __len__(self) -> int:
        return int(self.primal.shape[0])

    @property
    def best_primal(self) -> float:
        return float(np.max(self.primal))

    @property
    def best_primal_iter(self) -> int:
        return int(np.argmax(self.primal))

    @property
    def best_dual(self) -> float:
        return float(np.min(self.dual))

    @property
    def best_dual_iter(self) -> int:
        return int(np.argmin(self.dual))

    def weak_duality_ok(self, tol: float = 1e-6) -> bool:
        """dual >= primal - tol*(1+|dual|) at every iteration."""
        slack = self.dual - self.primal + tol * (1.0 + np.abs(self.dual))
        return bool(np.all(slack >= 0.0))


def _mu_array(mu: MuLike) -> np.ndarray:
    if isinstance(mu, PriceVector):
        return np.asarray(mu.mu, dtype=float)
    return np.asarray(mu, dtype=float)


def associate(inst: NetworkInstance, mu: MuLike) -> Association:
    """Each user picks argmax_j gamma_ij / mu_j; ties go to the lowest index."""
    m = _mu_array(mu)
    if np.any(m <= 0):
        raise ValueError("prices must be positive")
    ratios = inst.gamma / m[None, :]
    return Association(bs_of_user=np.argmax(ratios, axis=1))


def price_gradient(inst: NetworkInstance, assoc: Association, mu: MuLike) -> np.ndarray:
    """Subgradient of the dual at mu for the association it induced:
    component j is 1 - sum_{i in I_j} gamma_hat_ij * mu_j^(-1/alpha_i)."""
    m = _mu_array(mu)
    I, J = inst.num_users, inst.num_bs
    js = np.asarray(assoc.bs_of_user, dtype=int)
    idx = np.arange(I)
    terms = inst.gamma_hat[idx, js] * m[js] ** (-1.0 / inst.alphas.alpha)
    loads = np.bincount(js, weights=terms, minlength=J)
    return 1.0 - loads


def price_step(
    inst: NetworkInstance,
    assoc: Association,
    mu: MuLike,
    eta_t: float,
    cfg: Optional[PricingConfig] = None,
) -> PriceVector:
    """One projected subgradient step on the prices."""
    cfg = cfg or PricingConfig()
    m = _mu_array(mu)
    new = m - eta_t * price_gradient(inst, assoc, m)
    return PriceVector(mu=np.clip(new, cfg.mu_min, cfg.mu_max))


def dual_value(inst: NetworkInstance, mu: MuLike) -> float:
    """g(mu): an upper bound on the HAF value of every feasible decision.

    Users with alpha exactly 1 contribute max_j (ln gamma_ij - ln mu_j) - 1
    (the proportional-fair form); all others use the closed power form.
    """
    m = _mu_array(mu)
    if np.any(m <= 0):
        raise ValueError("prices must be positive")
    a = inst.alphas.alpha
    total = float(np.sum(m))
    pf = a == 1.0
    if np.any(pf):
        scores = np.log(inst.gamma[pf]) - np.log(m)[None, :]
        total += float(np.sum(np.max(scores, axis=1) - 1.0))
    rest = ~pf
    if np.any(rest):
        ar = a[rest]
        expo = (ar - 1.0) / ar
        coef = ar / (1.0 - ar)
        terms = coef[:, None] * inst.gamma_hat[rest] * m[None, :] ** expo[:, None]
        total += float(np.sum(np.max(terms, axis=1)))
    return total


def theorem2_bound(
    inst: NetworkInstance,
    assoc: Association,
    lambda_star: MuLike,
    lambda_hat: MuLike,
) -> float:
    """Analytic duality-gap bound between prices lambda_star and the exact
    per-BS multipliers lambda_hat of the association they induce:

        sum_j (lam*_j - lam^_j)
        + sum_i (alpha_i gamma_hat_{i,j_i} / (1-alpha_i))
              * ((lam*_{j_i})^e_i - (lam^_{j_i})^e_i),   e_i = (alpha_i-1)/alpha_i.

    Non-finite lambda_hat entries (empty BSs) contribute 0 to the first sum
    and cannot appear in the second.
    """
    ls = _mu_array(lambda_star)
    lh = np.where(np.isfinite(_mu_array(lambda_hat)), _mu_array(lambda_hat), 0.0)
    js = np.asarray(assoc.bs_of_user, dtype=int)
    a = inst.alphas.alpha
    idx = np.arange(inst.num_users)
    gh = inst.gamma_hat[idx, js]
    ls_u, lh_u = ls[js], lh[js]
    if np.any(lh_u <= 0):
        raise ValueError("lambda_hat must be positive on associated BSs")
    total = float(np.sum(ls - lh))
    pf = a == 1.0
    if np.any(pf):
        total += float(np.sum(np.log(lh_u[pf]) - np.log(ls_u[pf])))
    rest = ~pf
    if np.any(rest):
        ar = a[rest]
        e = (ar - 1.0) / ar
        coef = ar * gh[rest] / (1.0 - ar)
        total += float(np.sum(coef * (ls_u[rest] ** e - lh_u[rest] ** e)))
    return total


def _certificate(
    inst: NetworkInstance,
    dual: np.ndarray,
    primal: np.ndarray,
    mu_snaps: np.ndarray,
    ra_cfg: Optional[ra.LambdaSearchConfig],
) -> GapCertificate:
    t_star = int(np.argmin(dual))
    mu_star = mu_snaps[t_star].copy()
    assoc = associate(inst, mu_star)
    alloc = ra.allocate(inst, assoc, ra_cfg)
    lam_hat = np.where(np.isfinite(alloc.lam), alloc.lam, 0.0)
    bound = theorem2_bound(inst, assoc, mu_star, alloc.lam)
    return GapCertificate(
        theorem2_bound=bound,
        empirical_gap=float(dual[t_star] - np.max(primal)),
        lambda_star=PriceVector(mu=mu_star),
        lambda_hat=lam_hat,
    )


def solve(
    inst: NetworkInstance,
    cfg: Optional[PricingConfig] = None,
    ra_cfg: Optional[ra.LambdaSearchConfig] = None,
    mu0: Optional[np.ndarray] = None,
    x0: Optional[np.ndarray] = None,
) -> Tuple[Association, Allocation, RunTrace]:
    """Run the two-stage pricing loop and return the best primal iterate.

    With the default uniform price init the first association is max-SINR.
    mu0/x0 warm-start a continuation (time-varying operation). The returned
    trace carries per-iteration primal/dual values and a GapCertificate.
    """
    cfg = cfg or PricingConfig()
    T = int(cfg.total_iters)
    if T < 1:
        raise ValueError("total_iters must be >= 1")
    J = inst.num_bs
    mu = np.full(J, float(cfg.mu_init)) if mu0 is None else np.asarray(mu0, dtype=float).copy()
    mu = np.clip(mu, cfg.mu_min, cfg.mu_max)
    assoc = associate(inst, mu) if x0 is None else Association(np.asarray(x0, dtype=int).copy())

    primal = np.empty(T)
    dual = np.empty(T)
    mu_snaps = np.empty((T, J))
    changes = np.zeros(T, dtype=int)
    grad_norms = np.empty(T)

    best_p = -np.inf
    best_assoc = assoc
    best_alloc: Optional[Allocation] = None
    pending_changes = 0

    for t in range(1, T + 1):
        k = t - 1
        alloc = ra.allocate(inst, assoc, ra_cfg)
        p = haf_objective(inst, assoc, alloc)
        g = price_gradient(inst, assoc, mu)
        primal[k] = p
        dual[k] = dual_value(inst, mu)
        mu_snaps[k] = mu
        changes[k] = pending_changes
        grad_norms[k] = float(np.linalg.norm(g))
        if p > best_p:
            best_p = p
            best_assoc = assoc
            best_alloc = alloc
        mu = np.clip(mu - cfg.eta_at(t) * g, cfg.mu_min, cfg.mu_max)
        nxt = associate(inst, mu)
        pending_changes = int(np.count_nonzero(nxt.bs_of_user != assoc.bs_of_user))
        assoc = nxt

    cert = _certificate(inst, dual, primal, mu_snaps, ra_cfg)
    trace = RunTrace(
        primal=primal,
        dual=dual,
        mu=mu_snaps,
        assoc_changes=changes,
        grad_norm=grad_norms,
        mu_final=mu,
        certificate=cert,
    )
    assert best_alloc is not None
    return best_assoc, best_alloc, trace


def theorem1_check(
    inst: NetworkInstance,
    trace: RunTrace,
    mu_star_proxy: Optional[MuLike] = None,
    g_observed: Optional[float] = None,
    cfg: Optional[PricingConfig] = None,
    ra_cfg: Optional[ra.LambdaSearchConfig] = None,
    tol: float = 1e-6,
) -> bool:
    """Calibrated convergence-rate check against a finished run's trace.

    The best dual iterate of `trace` stands in for the dual optimum and the
    largest observed subgradient norm for the Lipschitz constant G. A second
    pass is run with the constant step ||mu1 - mu*|| / (G sqrt(T)); the check
    holds if its best dual gap obeys  min_t g(mu_t) - g(mu*) <= G ||mu1 - mu*||^2 / sqrt(T) + tol.
    """
    duals = trace.dual
    T = len(trace)
    t_star = int(np.argmin(duals))
    proxy = trace.mu[t_star] if mu_star_proxy is None else _mu_array(mu_star_proxy)
    g_star = dual_value(inst, proxy)
    G = float(np.max(trace.grad_norm)) if g_observed is None else float(g_observed)
    mu1 = trace.mu[0]
    D = float(np.linalg.norm(mu1 - proxy))
    if G <= 0.0 or D <= 0.0:
        return True
    eta = D / (G * math.sqrt(T))
    base = cfg or PricingConfig()
    cfg2 = replace(base, total_iters=T, eta0=eta, eta_schedule="constant")
    _, _, second = solve(inst, cfg2, ra_cfg, mu0=mu1.copy())
    lhs = second.best_dual - g_star
    return lhs <= G * D * D / math.sqrt(T) + tol
