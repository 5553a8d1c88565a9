"""Reference association policies the pricing method is compared against.

Three families:

* one-shot rules: uniform random association, max-SINR;
* pricing loops with alternative user scores f1(i, j) and price updates f2
  (proportional-fair, fixed-alpha fairness, delay-oriented), run through the
  same two-stage skeleton, price floor/ceiling and best-primal convention as
  the proposed method;
* search: single-move local search (2RS), a genetic algorithm, and exhaustive
  enumeration for small instances.

Every baseline's allocation is re-solved optimally for the true per-user
fairness exponents, so methods differ only in the association they pick.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from . import ra
from .core import Allocation, Association, NetworkInstance, haf_objective
from .pricing import PricingConfig, RunTrace, dual_value


class BaselineKind(Enum):
    RANDOM = "random"
    MAX_SINR = "max_sinr"
    PF = "pf"
    ALPHA_FAIR = "alpha_fair"
    MIN_LATENCY = "min_latency"
    TWO_RS = "two_rs"
    GENETIC = "genetic"
    BRUTE_FORCE = "brute_force"


@dataclass(frozen=True)
class GaParams:
    population: int = 60
    parents: int = 10
    mutation_prob: float = 0.01
    max_generations: int = 300


@dataclass(frozen=True)
class BaselineSpec:
    kind: BaselineKind
    alpha_fixed: Optional[float] = None  # ALPHA_FAIR only
    delay_argmin: bool = False  # MIN_LATENCY: flip the printed argmax rule
    ga: GaParams = field(default_factory=GaParams)

    def validate(self) -> None:
        if self.kind is BaselineKind.ALPHA_FAIR:
            if self.alpha_fixed is None:
                raise ValueError("alpha_fixed is required for the fixed-alpha baseline")
            if self.alpha_fixed <= 0 or self.alpha_fixed == 1.0:
                raise ValueError("alpha_fixed must be positive and != 1")


class InstanceTooLargeError(ValueError):
    """Raised when brute force would enumerate too many associations."""


def _finish(inst, bs, ra_cfg) -> Tuple[Association, Allocation]:
    assoc = Association(bs_of_user=np.asarray(bs, dtype=int))
    return assoc, ra.allocate(inst, assoc, ra_cfg)


def run_random(inst: NetworkInstance, seed: int, ra_cfg=None) -> Tuple[Association, Allocation]:
    """Uniform random BS per user. Deterministic given seed."""
    rng = np.random.default_rng(seed)
    return _finish(inst, rng.integers(0, inst.num_bs, size=inst.num_users), ra_cfg)


def run_max_sinr(inst: NetworkInstance, ra_cfg=None) -> Tuple[Association, Allocation]:
    """Every user takes its best channel, ties to the lowest BS index."""
    return _finish(inst, np.argmax(inst.gamma, axis=1), ra_cfg)


# ---------------------------------------------------------------- pricing ---


def _signed_pow(x: float, p: float) -> float:
    # real sign-preserving power; matches the plain power at integer p
    if x == 0.0:
        return 0.0
    return math.copysign(abs(x) ** p, x)


def _baseline_scores(inst: NetworkInstance, mu: np.ndarray, spec: BaselineSpec) -> np.ndarray:
    if spec.kind is BaselineKind.PF:
        return mu[None, :] * inst.gamma
    if spec.kind is BaselineKind.ALPHA_FAIR:
        a = float(spec.alpha_fixed)
        return mu[None, :] * inst.gamma ** ((1.0 - a) / a)
    if spec.kind is BaselineKind.MIN_LATENCY:
        return mu[None, :] / np.sqrt(inst.gamma)
    raise ValueError(f"{spec.kind} is not a pricing baseline")


def _baseline_associate(inst: NetworkInstance, mu: np.ndarray, spec: BaselineSpec) -> Association:
    scores = _baseline_scores(inst, mu, spec)
    if spec.kind is BaselineKind.MIN_LATENCY and spec.delay_argmin:
        return Association(bs_of_user=np.argmin(scores, axis=1))
    return Association(bs_of_user=np.argmax(scores, axis=1))


def _baseline_price_update(
    inst: NetworkInstance,
    assoc: Association,
    mu: np.ndarray,
    eta: float,
    spec: BaselineSpec,
    cfg: PricingConfig,
) -> np.ndarray:
    J = inst.num_bs
    js = np.asarray(assoc.bs_of_user, dtype=int)
    if spec.kind is BaselineKind.PF:
        counts = np.bincount(js, minlength=J).astype(float)
        delta = np.exp(np.minimum(mu - 1.0, 709.0)) - counts
    elif spec.kind is BaselineKind.ALPHA_FAIR:
        a = float(spec.alpha_fixed)
        gh = inst.gamma[np.arange(inst.num_users), js] ** ((1.0 - a) / a)
        sums = np.bincount(js, weights=gh, minlength=J)
        supply = np.array([_signed_pow((1.0 - a) / a * m, 1.0 / (a - 1.0)) for m in mu])
        delta = -supply + sums
    elif spec.kind is BaselineKind.MIN_LATENCY:
        inv_sqrt = 1.0 / np.sqrt(inst.gamma[np.arange(inst.num_users), js])
        delta = 0.5 * mu + np.bincount(js, weights=inv_sqrt, minlength=J)
    else:
        raise ValueError(f"{spec.kind} is not a pricing baseline")
    return np.clip(mu - eta * delta, cfg.mu_min, cfg.mu_max)


def run_pricing_baseline(
    inst: NetworkInstance,
    spec: BaselineSpec,
    cfg: Optional[PricingConfig] = None,
    ra_cfg=None,
    mu0: Optional[np.ndarray] = None,
    x0: Optional[np.ndarray] = None,
) -> Tuple[Association, Allocation, RunTrace]:
    """Two-stage loop with the baseline's own scores and price update.

    The recorded dual values are the HAF dual bound at the baseline's prices
    (valid for any positive price vector); no gap certificate is attached
    because the bound construction is specific to the proposed update.
    """
    spec.validate()
    cfg = cfg or PricingConfig()
    T = int(cfg.total_iters)
    J = inst.num_bs
    mu = np.full(J, float(cfg.mu_init)) if mu0 is None else np.asarray(mu0, dtype=float).copy()
    mu = np.clip(mu, cfg.mu_min, cfg.mu_max)
    assoc = _baseline_associate(inst, mu, spec) if x0 is None else Association(np.asarray(x0, dtype=int).copy())

    primal = np.empty(T)
    dual = np.empty(T)
    mu_snaps = np.empty((T, J))
    changes = np.zeros(T, dtype=int)
    grad_norms = np.zeros(T)

    best_p = -np.inf
    best: Tuple[Association, Allocation] = (assoc, ra.allocate(inst, assoc, ra_cfg))
    pending = 0
    for t in range(1, T + 1):
        k = t - 1
        alloc = ra.allocate(inst, assoc, ra_cfg)
        p = haf_objective(inst, assoc, alloc)
        primal[k] = p
        dual[k] = dual_value(inst, mu)
        mu_snaps[k] = mu
        changes[k] = pending
        if p > best_p:
            best_p = p
            best = (assoc, alloc)
        mu = _baseline_price_update(inst, assoc, mu, cfg.eta_at(t), spec, cfg)
        nxt = _baseline_associate(inst, mu, spec)
        pending = int(np.count_nonzero(nxt.bs_of_user != assoc.bs_of_user))
        assoc = nxt

    trace = RunTrace(
        primal=primal,
        dual=dual,
        mu=mu_snaps,
        assoc_changes=changes,
        grad_norm=grad_norms,
        mu_final=mu,
        certificate=None,
    )
    return best[0], best[1], trace


# ----------------------------------------------------------------- search ---


class _UtilityCache:
    """Memoizes the optimal per-BS utility of a user set (keyed by tuple)."""

    def __init__(self, inst: NetworkInstance, ra_cfg=None):
        self.inst = inst
        self.ra_cfg = ra_cfg
        self._memo: Dict[Tuple[int, Tuple[int, ...]], float] = {}

    def utility(self, j: int, users: Tuple[int, ...]) -> float:
        key = (j, users)
        val = self._memo.get(key)
        if val is None:
            val, _ = ra.bs_optimal_utility(self.inst, j, np.array(users, dtype=int), self.ra_cfg)
            self._memo[key] = val
        return val

    def total(self, bs: np.ndarray) -> float:
        J = self.inst.num_bs
        return sum(
            self.utility(j, tuple(np.flatnonzero(bs == j).tolist())) for j in range(J)
        )


def run_2rs(
    inst: NetworkInstance,
    start: Association,
    max_passes: int = 50,
    adaptive: bool = False,
    ra_cfg=None,
) -> Tuple[Association, Allocation]:
    """First-improvement local search over single-user reassignments.

    A move changes one user's BS (association matrices at Hamming distance 2).
    Full mode repeats passes until a complete pass finds no improving move or
    max_passes is hit; adaptive mode applies exactly one improving move.
    """
    cache = _UtilityCache(inst, ra_cfg)
    bs = np.asarray(start.bs_of_user, dtype=int).copy()
    I, J = inst.num_users, inst.num_bs
    sets = [tuple(np.flatnonzero(bs == j).tolist()) for j in range(J)]
    utils = [cache.utility(j, sets[j]) for j in range(J)]

    for _ in range(max_passes):
        improved = False
        for i in range(I):
            a = bs[i]
            for b in range(J):
                if b == a:
                    continue
                minus = tuple(u for u in sets[a] if u != i)
                plus = tuple(sorted(sets[b] + (i,)))
                delta = (
                    cache.utility(a, minus) + cache.utility(b, plus) - utils[a] - utils[b]
                )
                if delta > 1e-12:
                    bs[i] = b
                    sets[a], sets[b] = minus, plus
                    utils[a] = cache.utility(a, minus)
                    utils[b] = cache.utility(b, plus)
                    improved = True
                    if adaptive:
                        return _finish(inst, bs, ra_cfg)
                    break
        if not improved:
            break
    return _finish(inst, bs, ra_cfg)


def run_ga(
    inst: NetworkInstance,
    params: Optional[GaParams] = None,
    seed: int = 0,
    ra_cfg=None,
) -> Tuple[Association, Allocation]:
    """Genetic search over association vectors; returns the best ever seen.

    Elitist: the top `parents` chromosomes survive unchanged, offspring come
    from uniform crossover of two random parents plus per-gene mutation.
    """
    params = params or GaParams()
    if params.parents < 2 or params.parents > params.population:
        raise ValueError("need 2 <= parents <= population")
    rng = np.random.default_rng(seed)
    cache = _UtilityCache(inst, ra_cfg)
    I, J = inst.num_users, inst.num_bs

    pop = rng.integers(0, J, size=(params.population, I))
    fitness = np.array([cache.total(row) for row in pop])
    best_idx = int(np.argmax(fitness))
    best_bs, best_fit = pop[best_idx].copy(), float(fitness[best_idx])

    for _ in range(params.max_generations):
        order = np.argsort(-fitness, kind="stable")
        elite = pop[order[: params.parents]]
        children = np.empty((params.population - params.parents, I), dtype=pop.dtype)
        for c in range(children.shape[0]):
            pa, pb = rng.choice(params.parents, size=2, replace=False)
            mask = rng.random(I) < 0.5
            child = np.where(mask, elite[pa], elite[pb])
            mut = rng.random(I) < params.mutation_prob
            if np.any(mut):
                child[mut] = rng.integers(0, J, size=int(np.count_nonzero(mut)))
            children[c] = child
        pop = np.vstack([elite, children])
        fitness = np.array([cache.total(row) for row in pop])
        gen_best = int(np.argmax(fitness))
        if float(fitness[gen_best]) > best_fit:
            best_fit = float(fitness[gen_best])
            best_bs = pop[gen_best].copy()

    return _finish(inst, best_bs, ra_cfg)


def brute_force(
    inst: NetworkInstance,
    ra_cfg=None,
    max_candidates: int = 1_000_000,
) -> Tuple[Association, Allocation, float]:
    """Exhaustive search over all J^I associations (small instances only).

    Ties keep the first maximum in lexicographic enumeration order. Raises
    InstanceTooLargeError when J^I exceeds max_candidates.
    """
    I, J = inst.num_users, inst.num_bs
    n_cand = J**I
    if n_cand > max_candidates:
        raise InstanceTooLargeError(f"{J}^{I} = {n_cand} associations exceed the {max_candidates} cap")
    if J == 1:
        assoc, alloc = _finish(inst, np.zeros(I, dtype=int), ra_cfg)
        return assoc, alloc, haf_objective(inst, assoc, alloc)

    # per-BS utility of every user subset, then sum over the partition
    table = []
    for j in range(J):
        col = np.empty(2**I)
        col[0] = 0.0
        for mask in range(1, 2**I):
            users = [i for i in range(I) if mask >> i & 1]
            col[mask], _ = ra.bs_optimal_utility(inst, j, np.array(users), ra_cfg)
        table.append(col)

    best_val = -np.inf
    best = None
    for cand in itertools.product(range(J), repeat=I):
        masks = [0] * J
        for i, j in enumerate(cand):
            masks[j] |= 1 << i
        val = 0.0
        for j in range(J):
            val += table[j][masks[j]]
        if val > best_val:
            best_val = val
            best = cand
    assoc, alloc = _finish(inst, np.array(best, dtype=int), ra_cfg)
    return assoc, alloc, float(best_val)
