"""Monte Carlo experiment harness and structured result files.

A ScenarioConfig pins the deployment, the fairness mix and the solver knobs.
One master seed fans out to per-(realization, purpose) child seeds through a
counter-based split, so adding or removing methods never perturbs the channel
draws and reruns are byte-identical. All results are written as CSV (9
significant digits) next to a manifest naming the emitted files.
"""

from __future__ import annotations

import configparser
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import baselines, channel, metrics, pricing, ra
from .baselines import BaselineKind, BaselineSpec, GaParams
from .core import AlphaProfile, Association, GROUP_INTERVALS, Group, NetworkInstance, haf_objective
from .pricing import PricingConfig
from .ra import LambdaSearchConfig

#: Group mix of the low-fairness-demand scenario (uniform).
LOW_RATIOS = (0.25, 0.25, 0.25, 0.25)
#: Group mix of the high-fairness-demand scenario (skewed to A3/A4).
HIGH_RATIOS = (0.125, 0.125, 0.375, 0.375)

_PURPOSE_TOPOLOGY = 0
_PURPOSE_ALPHAS = 1
_PURPOSE_FADING = 2
_PURPOSE_RANDOM = 3
_PURPOSE_GA = 4


@dataclass(frozen=True)
class TimeVaryingConfig:
    rho: float = 0.97
    num_slots: int = 100
    iters_per_slot: int = 10
    eta0: float = 0.05  # constant step while tracking

    def validate(self) -> None:
        if not (0.0 < self.rho <= 1.0):
            raise ValueError("rho must lie in (0, 1]")
        if self.num_slots < 1 or self.iters_per_slot < 1:
            raise ValueError("num_slots and iters_per_slot must be >= 1")


@dataclass(frozen=True)
class ScenarioConfig:
    """Deployment, fairness mix and solver settings for one experiment."""

    num_bs: int = 6
    num_users: int = 40
    bandwidth_mhz: float = 20.0
    cell_size_m: float = 250.0
    noise_dbm_per_hz: float = -174.0
    indoor_prob: float = 0.5
    macro_power_dbm: Tuple[float, float] = (33.0, 36.0)
    small_power_dbm: Tuple[float, float] = (23.0, 30.0)
    carrier_ghz: float = 2.0
    pathloss_exp_macro: float = 3.76
    pathloss_exp_small: float = 3.19
    shadow_sigma_db: float = 8.0
    indoor_loss_db: float = 20.0
    cluster_centers: Tuple[Tuple[float, float], ...] = ((0.25, 0.25), (0.75, 0.25), (0.25, 0.75))
    cluster_radius_m: float = 30.0
    gamma_min: float = 1e-6
    alpha_ratios: Tuple[float, float, float, float] = LOW_RATIOS
    num_seeds: int = 1000
    methods: Tuple[str, ...] = ("proposed", "max_sinr", "pf", "af_low", "af_high", "min_latency", "random")
    force: bool = False
    pricing: PricingConfig = field(default_factory=PricingConfig)
    ra: LambdaSearchConfig = field(default_factory=LambdaSearchConfig)
    timevary: TimeVaryingConfig = field(default_factory=TimeVaryingConfig)
    ga: GaParams = field(default_factory=GaParams)

    def validate(self) -> None:
        """Reject inconsistent mixes; range-check deployment fields unless forced."""
        if len(self.alpha_ratios) != 4:
            raise ValueError("alpha_ratios needs one entry per group")
        if abs(sum(self.alpha_ratios) - 1.0) > 1e-9:
            raise ValueError("alpha_ratios must sum to 1")
        if any(r < 0 for r in self.alpha_ratios):
            raise ValueError("alpha_ratios must be non-negative")
        if self.num_seeds < 1:
            raise ValueError("num_seeds must be >= 1")
        for m in self.methods:
            if m not in available_methods():
                raise ValueError(f"unknown method {m!r}")
        if self.pricing.eta_schedule not in ("diminishing", "constant"):
            raise ValueError(f"unknown eta_schedule {self.pricing.eta_schedule!r}")
        self.timevary.validate()
        if self.force:
            return
        # deployment fields are pinned to the reference ranges unless forced
        pinned = [
            ("num_bs", self.num_bs, 6, 6),
            ("num_users", self.num_users, 40, 60),
            ("bandwidth_mhz", self.bandwidth_mhz, 20.0, 20.0),
            ("cell_size_m", self.cell_size_m, 250.0, 250.0),
            ("noise_dbm_per_hz", self.noise_dbm_per_hz, -174.0, -174.0),
            ("indoor_prob", self.indoor_prob, 0.5, 0.5),
        ]
        for name, val, lo, hi in pinned:
            if not (lo <= val <= hi):
                raise ValueError(f"{name}={val} outside [{lo}, {hi}] (set force=true to override)")
        if tuple(self.macro_power_dbm) != (33.0, 36.0) or tuple(self.small_power_dbm) != (23.0, 30.0):
            raise ValueError("power tiers differ from the reference ranges (set force=true to override)")


def low_fairness_config(**overrides) -> ScenarioConfig:
    return replace(ScenarioConfig(alpha_ratios=LOW_RATIOS), **overrides)


def high_fairness_config(**overrides) -> ScenarioConfig:
    return replace(ScenarioConfig(alpha_ratios=HIGH_RATIOS), **overrides)


# ---------------------------------------------------------------- seeding ---


def child_seed(master_seed: int, *tags: int) -> int:
    """Counter-based seed split: stable per (master, tags), order-free."""
    ss = np.random.SeedSequence((int(master_seed),) + tuple(int(t) for t in tags))
    return int(ss.generate_state(1, np.uint64)[0])


def sample_alphas(cfg: ScenarioConfig, seed: int) -> AlphaProfile:
    """Draw each user's group by the configured ratios, then its exponent
    uniformly inside the group interval. Deterministic given (cfg, seed)."""
    rng = np.random.default_rng(seed)
    p = np.asarray(cfg.alpha_ratios, dtype=float)
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError("alpha_ratios must sum to 1")
    groups = rng.choice(4, size=cfg.num_users, p=p)
    lo = np.array([GROUP_INTERVALS[Group(k)][0] for k in range(4)])
    hi = np.array([GROUP_INTERVALS[Group(k)][1] for k in range(4)])
    u = rng.random(cfg.num_users)
    alpha = lo[groups] + u * (hi[groups] - lo[groups])
    prof = AlphaProfile(alpha=alpha, group=groups)
    prof.validate()
    return prof


def build_instance(
    cfg: ScenarioConfig,
    master_seed: int,
    seed_index: int,
    rho: float = 1.0,
) -> Tuple[NetworkInstance, channel.Topology, channel.FadingState]:
    """One full realization: topology, fairness profile, initial fading."""
    topo = channel.generate_topology(cfg, child_seed(master_seed, seed_index, _PURPOSE_TOPOLOGY))
    prof = sample_alphas(cfg, child_seed(master_seed, seed_index, _PURPOSE_ALPHAS))
    fading = channel.make_fading(
        cfg.num_users, cfg.num_bs, rho, child_seed(master_seed, seed_index, _PURPOSE_FADING)
    )
    inst = channel.make_instance(topo, fading, prof, meta={"seed_index": seed_index})
    return inst, topo, fading


# ---------------------------------------------------------------- methods ---

_PRICING_BASELINES: Dict[str, BaselineSpec] = {
    "pf": BaselineSpec(BaselineKind.PF),
    "af_low": BaselineSpec(BaselineKind.ALPHA_FAIR, alpha_fixed=0.6),
    "af_high": BaselineSpec(BaselineKind.ALPHA_FAIR, alpha_fixed=1.6),
    "min_latency": BaselineSpec(BaselineKind.MIN_LATENCY),
    "min_latency_argmin": BaselineSpec(BaselineKind.MIN_LATENCY, delay_argmin=True),
}


def available_methods() -> Tuple[str, ...]:
    return (
        "proposed",
        "max_sinr",
        "random",
        "two_rs",
        "ga",
        "brute_force",
    ) + tuple(_PRICING_BASELINES)


@dataclass
class MethodResult:
    name: str
    assoc: Association
    alloc: object
    trace: Optional[pricing.RunTrace] = None


def run_method(
    name: str,
    inst: NetworkInstance,
    cfg: ScenarioConfig,
    master_seed: int,
    seed_index: int,
) -> MethodResult:
    """Dispatch one method on one instance."""
    if name == "proposed":
        assoc, alloc, trace = pricing.solve(inst, cfg.pricing, cfg.ra)
        return MethodResult(name, assoc, alloc, trace)
    if name == "max_sinr":
        assoc, alloc = baselines.run_max_sinr(inst, cfg.ra)
        return MethodResult(name, assoc, alloc)
    if name == "random":
        assoc, alloc = baselines.run_random(inst, child_seed(master_seed, seed_index, _PURPOSE_RANDOM), cfg.ra)
        return MethodResult(name, assoc, alloc)
    if name in _PRICING_BASELINES:
        assoc, alloc, trace = baselines.run_pricing_baseline(
            inst, _PRICING_BASELINES[name], cfg.pricing, cfg.ra
        )
        return MethodResult(name, assoc, alloc, trace)
    if name == "two_rs":
        start, _ = baselines.run_max_sinr(inst, cfg.ra)
        assoc, alloc = baselines.run_2rs(inst, start, ra_cfg=cfg.ra)
        return MethodResult(name, assoc, alloc)
    if name == "ga":
        assoc, alloc = baselines.run_ga(
            inst, cfg.ga, child_seed(master_seed, seed_index, _PURPOSE_GA), cfg.ra
        )
        return MethodResult(name, assoc, alloc)
    if name == "brute_force":
        assoc, alloc, _ = baselines.brute_force(inst, cfg.ra)
        return MethodResult(name, assoc, alloc)
    raise ValueError(f"unknown method {name!r}")


# ------------------------------------------------------------------- CSVs ---

_GROUPS = tuple(g.name.lower() for g in Group)

PER_SEED_COLUMNS = (
    ["seed", "method", "haf"]
    + [f"haf_{g}" for g in _GROUPS]
    + ["sum_rate"]
    + [f"sum_rate_{g}" for g in _GROUPS]
    + ["pf"]
    + [f"pf_{g}" for g in _GROUPS]
    + ["latency"]
    + [f"latency_{g}" for g in _GROUPS]
    + ["min_rate"]
    + [f"min_rate_{g}" for g in _GROUPS]
    + ["best_dual", "empirical_gap", "theorem2_bound"]
)


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("refusing to emit a non-finite value")
    return f"{x:.9g}"


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_manifest(out: Path, names: List[str]) -> Path:
    path = out / "manifest.txt"
    with open(path, "w") as fh:
        for name in sorted(names):
            fh.write(name + "\n")
    return path


def _seed_row(seed_index: int, res: MethodResult, rep: metrics.MetricsReport) -> dict:
    row = {
        "seed": seed_index,
        "method": res.name,
        "haf": rep.haf_total,
        "sum_rate": rep.sum_rate,
        "pf": rep.pf,
        "latency": rep.avg_latency,
        "min_rate": rep.min_rate,
    }
    for g in Group:
        key = g.name.lower()
        row[f"haf_{key}"] = rep.haf_by_group[g]
        row[f"sum_rate_{key}"] = rep.sum_rate_by_group[g]
        row[f"pf_{key}"] = rep.pf_by_group[g]
        row[f"latency_{key}"] = rep.avg_latency_by_group[g]
        row[f"min_rate_{key}"] = rep.min_rate_by_group[g]
    if res.trace is not None:
        row["best_dual"] = res.trace.best_dual
        row["empirical_gap"] = res.trace.best_dual - res.trace.best_primal
    else:
        row["best_dual"] = ""
        row["empirical_gap"] = ""
    cert = res.trace.certificate if res.trace is not None else None
    row["theorem2_bound"] = cert.theorem2_bound if cert is not None else ""
    return row


def _run_one_seed(cfg: ScenarioConfig, master_seed: int, seed_index: int) -> List[dict]:
    inst, _, _ = build_instance(cfg, master_seed, seed_index)
    rows = []
    for name in cfg.methods:
        res = run_method(name, inst, cfg, master_seed, seed_index)
        rep = metrics.report(inst, res.assoc, res.alloc)
        rows.append(_seed_row(seed_index, res, rep))
    return rows


def _seed_worker(args) -> List[dict]:
    return _run_one_seed(*args)


def _collect_rows(cfg: ScenarioConfig, master_seed: int, threads: int) -> List[dict]:
    tasks = [(cfg, master_seed, s) for s in range(cfg.num_seeds)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_seed_worker, tasks))
    else:
        chunks = [_run_one_seed(*t) for t in tasks]
    return [row for chunk in chunks for row in chunk]


def _mean_or_blank(values: List) -> object:
    vals = [v for v in values if v != ""]
    return float(np.mean(vals)) if vals else ""


def summarize(rows: List[dict], methods: Sequence[str]) -> List[dict]:
    """Per-method summary: seed count, HAF mean/sample std, group means,
    certificate column means where defined."""
    out = []
    for name in methods:
        sel = [r for r in rows if r["method"] == name]
        hafs = np.array([r["haf"] for r in sel])
        summary = {
            "method": name,
            "n_seeds": len(sel),
            "haf_mean": float(np.mean(hafs)),
            "haf_std": float(np.std(hafs, ddof=1)) if len(sel) > 1 else 0.0,
        }
        for g in _GROUPS:
            summary[f"haf_{g}_mean"] = float(np.mean([r[f"haf_{g}"] for r in sel]))
        summary["best_dual_mean"] = _mean_or_blank([r["best_dual"] for r in sel])
        summary["empirical_gap_mean"] = _mean_or_blank([r["empirical_gap"] for r in sel])
        summary["theorem2_bound_mean"] = _mean_or_blank([r["theorem2_bound"] for r in sel])
        out.append(summary)
    return out


SUMMARY_COLUMNS = (
    ["method", "n_seeds", "haf_mean", "haf_std"]
    + [f"haf_{g}_mean" for g in _GROUPS]
    + ["best_dual_mean", "empirical_gap_mean", "theorem2_bound_mean"]
)

GROUP_METRIC_COLUMNS = ["method", "group", "metric", "mean", "std", "n_seeds"]


def group_metric_rows(rows: List[dict], methods: Sequence[str]) -> List[list]:
    """Long-form per-group table over sum rate, PF, latency and min rate."""
    out = []
    for name in methods:
        sel = [r for r in rows if r["method"] == name]
        for g in _GROUPS:
            for metric_name in ("sum_rate", "pf", "latency", "min_rate"):
                vals = np.array([r[f"{metric_name}_{g}"] for r in sel])
                std = float(np.std(vals, ddof=1)) if len(sel) > 1 else 0.0
                out.append([name, g.upper(), metric_name, float(np.mean(vals)), std, len(sel)])
    return out


def run_static_experiment(
    cfg: ScenarioConfig,
    out_dir,
    master_seed: int = 0,
    threads: int = 1,
) -> dict:
    """Monte Carlo over cfg.num_seeds realizations; one row per (seed, method).

    Writes static_per_seed.csv, static_summary.csv, static_group_metrics.csv
    and manifest.txt under out_dir. Fails before any computation if the
    output directory cannot be created or written.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    probe = out / "manifest.txt"
    probe.touch()  # surface I/O errors before the compute starts

    rows = _collect_rows(cfg, master_seed, threads)
    per_seed_path = out / "static_per_seed.csv"
    _write_csv(per_seed_path, PER_SEED_COLUMNS, ([r[c] for c in PER_SEED_COLUMNS] for r in rows))

    summary = summarize(rows, cfg.methods)
    summary_path = out / "static_summary.csv"
    _write_csv(summary_path, SUMMARY_COLUMNS, ([s[c] for c in SUMMARY_COLUMNS] for s in summary))

    group_path = out / "static_group_metrics.csv"
    _write_csv(group_path, GROUP_METRIC_COLUMNS, group_metric_rows(rows, cfg.methods))

    names = [per_seed_path.name, summary_path.name, group_path.name]
    _write_manifest(out, names + ["manifest.txt"])
    return {"rows": rows, "summary": summary, "files": [out / n for n in names]}


def run_user_sweep(
    cfg: ScenarioConfig,
    user_counts: Sequence[int],
    out_dir,
    master_seed: int = 0,
    threads: int = 1,
) -> dict:
    """Re-run the static experiment at each user count; mean HAF with a
    normal-approximation 95% interval per method."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sweep_rows = []
    for count in user_counts:
        cfg_i = replace(cfg, num_users=int(count))
        rows = _collect_rows(cfg_i, master_seed, threads)
        for name in cfg.methods:
            hafs = np.array([r["haf"] for r in rows if r["method"] == name])
            std = float(np.std(hafs, ddof=1)) if hafs.size > 1 else 0.0
            ci = 1.96 * std / math.sqrt(hafs.size) if hafs.size else 0.0
            sweep_rows.append([int(count), name, hafs.size, float(np.mean(hafs)), ci])
    path = out / "sweep.csv"
    _write_csv(path, ["users", "method", "n_seeds", "haf_mean", "haf_ci95"], sweep_rows)
    _write_manifest(out, [path.name, "manifest.txt"])
    return {"rows": sweep_rows, "files": [path]}


_TV_METHODS = ("proposed", "frozen", "two_rs")


def run_time_varying(
    cfg: ScenarioConfig,
    out_dir,
    master_seed: int = 0,
    methods: Optional[Sequence[str]] = None,
) -> dict:
    """Slotted operation over a Gauss-Markov fading process.

    Adaptive methods carry state across slots: the pricing methods warm-start
    their prices and run iters_per_slot iterations with a constant step; the
    local search applies one improving move per slot. The frozen reference
    keeps the association adaptive pricing reached at the end of slot 1 and
    only re-solves the bandwidth split. Per-slot HAF is evaluated at the
    end-of-slot association.
    """
    tv = cfg.timevary
    tv.validate()
    methods = tuple(methods) if methods is not None else _TV_METHODS
    for m in methods:
        if m not in _TV_METHODS + tuple(_PRICING_BASELINES) + ("max_sinr", "random"):
            raise ValueError(f"method {m!r} not supported in time-varying mode")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    slot_cfg = replace(
        cfg.pricing, total_iters=tv.iters_per_slot, eta0=tv.eta0, eta_schedule="constant"
    )
    rows = []
    for s in range(cfg.num_seeds):
        inst, topo, fading = build_instance(cfg, master_seed, s, rho=tv.rho)
        prof = inst.alphas
        state: Dict[str, dict] = {m: {} for m in methods}
        for slot in range(1, tv.num_slots + 1):
            if slot > 1:
                fading = channel.evolve_fading(fading)
                inst = channel.make_instance(topo, fading, prof, meta={"seed_index": s})
            for m in methods:
                st = state[m]
                if m == "proposed" or m in _PRICING_BASELINES:
                    if m == "proposed":
                        _, _, trace = pricing.solve(
                            inst, slot_cfg, cfg.ra, mu0=st.get("mu"), x0=st.get("x")
                        )
                        assoc = pricing.associate(inst, trace.mu_final)
                    else:
                        spec = _PRICING_BASELINES[m]
                        _, _, trace = baselines.run_pricing_baseline(
                            inst, spec, slot_cfg, cfg.ra, mu0=st.get("mu"), x0=st.get("x")
                        )
                        assoc = baselines._baseline_associate(inst, trace.mu_final, spec)
                    st["mu"] = trace.mu_final
                    st["x"] = assoc.bs_of_user
                elif m == "frozen":
                    if "x" not in st:
                        _, _, trace = pricing.solve(inst, slot_cfg, cfg.ra)
                        st["x"] = pricing.associate(inst, trace.mu_final).bs_of_user
                    assoc = Association(st["x"])
                elif m == "two_rs":
                    if "x" not in st:
                        st["x"] = np.argmax(inst.gamma, axis=1)
                    assoc, _ = baselines.run_2rs(inst, Association(st["x"]), adaptive=True, ra_cfg=cfg.ra)
                    st["x"] = assoc.bs_of_user
                elif m == "max_sinr":
                    assoc, _ = baselines.run_max_sinr(inst, cfg.ra)
                else:  # random, fresh draw each slot
                    assoc, _ = baselines.run_random(
                        inst, child_seed(master_seed, s, _PURPOSE_RANDOM, slot), cfg.ra
                    )
                alloc = ra.allocate(inst, assoc, cfg.ra)
                rows.append([s, slot, m, haf_objective(inst, assoc, alloc)])

    path = out / "timevary.csv"
    _write_csv(path, ["seed", "slot", "method", "haf"], rows)
    _write_manifest(out, [path.name, "manifest.txt"])
    return {"rows": rows, "files": [path]}


def emit_convergence_trace(trace: pricing.RunTrace, path) -> Path:
    """Write one run's (iteration, primal, dual, gap) rows; header-only when
    the trace is empty."""
    path = Path(path)
    rows = (
        [t + 1, trace.primal[t], trace.dual[t], trace.dual[t] - trace.primal[t]]
        for t in range(len(trace))
    )
    _write_csv(path, ["iter", "primal_haf", "dual_value", "gap"], rows)
    return path


def bootstrap_mean_lower(
    diffs: np.ndarray, conf: float = 0.95, n_boot: int = 2000, seed: int = 0
) -> float:
    """One-sided lower confidence bound on the mean via percentile bootstrap."""
    diffs = np.asarray(diffs, dtype=float)
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, diffs.size, size=(n_boot, diffs.size))
    means = diffs[idx].mean(axis=1)
    return float(np.quantile(means, 1.0 - conf))


# ------------------------------------------------------------ config file ---

_SCENARIO_SCALARS = (
    "num_bs",
    "num_users",
    "bandwidth_mhz",
    "cell_size_m",
    "noise_dbm_per_hz",
    "indoor_prob",
    "carrier_ghz",
    "pathloss_exp_macro",
    "pathloss_exp_small",
    "shadow_sigma_db",
    "indoor_loss_db",
    "cluster_radius_m",
    "gamma_min",
    "num_seeds",
    "force",
)


def save_config(cfg: ScenarioConfig, path) -> Path:
    """Serialize to a flat INI file; load_config(save_config(cfg)) == cfg."""
    parser = configparser.ConfigParser()
    sc = {}
    for name in _SCENARIO_SCALARS:
        sc[name] = repr(getattr(cfg, name)) if not isinstance(getattr(cfg, name), bool) else str(getattr(cfg, name)).lower()
    sc["macro_power_dbm"] = ",".join(repr(v) for v in cfg.macro_power_dbm)
    sc["small_power_dbm"] = ",".join(repr(v) for v in cfg.small_power_dbm)
    sc["alpha_ratios"] = ",".join(repr(v) for v in cfg.alpha_ratios)
    sc["cluster_centers"] = ",".join(f"{repr(x)}:{repr(y)}" for x, y in cfg.cluster_centers)
    sc["methods"] = ",".join(cfg.methods)
    parser["scenario"] = sc
    parser["pricing"] = {
        "total_iters": repr(cfg.pricing.total_iters),
        "eta0": repr(cfg.pricing.eta0),
        "eta_schedule": cfg.pricing.eta_schedule,
        "mu_init": repr(cfg.pricing.mu_init),
        "mu_min": repr(cfg.pricing.mu_min),
        "mu_max": repr(cfg.pricing.mu_max),
    }
    parser["ra"] = {
        "initial_step": repr(cfg.ra.initial_step),
        "outer_iters": repr(cfg.ra.outer_iters),
        "inner_iters": repr(cfg.ra.inner_iters),
        "bisect_tol": repr(cfg.ra.bisect_tol),
    }
    parser["timevary"] = {
        "rho": repr(cfg.timevary.rho),
        "num_slots": repr(cfg.timevary.num_slots),
        "iters_per_slot": repr(cfg.timevary.iters_per_slot),
        "eta0": repr(cfg.timevary.eta0),
    }
    parser["ga"] = {
        "population": repr(cfg.ga.population),
        "parents": repr(cfg.ga.parents),
        "mutation_prob": repr(cfg.ga.mutation_prob),
        "max_generations": repr(cfg.ga.max_generations),
    }
    path = Path(path)
    with open(path, "w") as fh:
        parser.write(fh)
    return path


def _coerce(section: str, key: str, raw: str, template_value):
    try:
        if isinstance(template_value, bool):
            if raw.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError
            return raw.lower() in ("true", "1", "yes")
        if isinstance(template_value, int):
            return int(raw)
        if isinstance(template_value, float):
            return float(raw)
        return raw
    except ValueError:
        raise ValueError(f"malformed config value [{section}] {key} = {raw!r}") from None


def load_config(path) -> ScenarioConfig:
    """Parse an INI scenario file. Unknown keys and malformed values raise
    ValueError naming the offending key."""
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise FileNotFoundError(path)
    defaults = ScenarioConfig()
    known_sections = {"scenario", "pricing", "ra", "timevary", "ga"}
    for section in parser.sections():
        if section not in known_sections:
            raise ValueError(f"unknown config section [{section}]")

    kw = {}
    if parser.has_section("scenario"):
        for key, raw in parser["scenario"].items():
            if key in _SCENARIO_SCALARS:
                kw[key] = _coerce("scenario", key, raw, getattr(defaults, key))
            elif key in ("macro_power_dbm", "small_power_dbm"):
                parts = [p for p in raw.split(",") if p.strip()]
                if len(parts) != 2:
                    raise ValueError(f"malformed config value [scenario] {key} = {raw!r}")
                kw[key] = tuple(float(p) for p in parts)
            elif key == "alpha_ratios":
                parts = [p for p in raw.split(",") if p.strip()]
                if len(parts) != 4:
                    raise ValueError(f"malformed config value [scenario] alpha_ratios = {raw!r}")
                kw[key] = tuple(float(p) for p in parts)
            elif key == "cluster_centers":
                centers = []
                for pair in raw.split(","):
                    x, _, y = pair.partition(":")
                    if not y:
                        raise ValueError(f"malformed config value [scenario] cluster_centers = {raw!r}")
                    centers.append((float(x), float(y)))
                kw[key] = tuple(centers)
            elif key == "methods":
                kw[key] = tuple(m.strip() for m in raw.split(",") if m.strip())
            else:
                raise ValueError(f"unknown config key [scenario] {key}")

    def sub(section: str, cls, template):
        if not parser.has_section(section):
            return template
        vals = {}
        for key, raw in parser[section].items():
            if not hasattr(template, key):
                raise ValueError(f"unknown config key [{section}] {key}")
            vals[key] = _coerce(section, key, raw, getattr(template, key))
        return replace(template, **vals)

    cfg = ScenarioConfig(
        **kw,
        pricing=sub("pricing", PricingConfig, defaults.pricing),
        ra=sub("ra", LambdaSearchConfig, defaults.ra),
        timevary=sub("timevary", TimeVaryingConfig, defaults.timevary),
        ga=sub("ga", GaParams, defaults.ga),
    )
    cfg.validate()
    return cfg
