"""Command line front end.

Verbs:
  static    Monte Carlo comparison on fixed channels.
  sweep     static comparison repeated over a range of user counts.
  timevary  slotted tracking over Gauss-Markov fading.
  converge  single-run primal/dual trace of the pricing method.
  oracle    small-instance certificate check against exhaustive search.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import baselines, experiments, metrics, pricing
from .core import haf_objective
from .experiments import ScenarioConfig, load_config


def _base_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="INI scenario file")
    common.add_argument("--seed", type=int, default=0, help="master seed")
    common.add_argument("--out", type=str, default="hafnet_out", help="output directory")
    common.add_argument("--methods", type=str, default=None, help="comma list overriding the configured methods")
    common.add_argument("--threads", type=int, default=1, help="worker processes over seeds")
    return common


def _load(args) -> ScenarioConfig:
    cfg = load_config(args.config) if args.config else ScenarioConfig()
    if args.methods:
        cfg = replace(cfg, methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()))
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    common = _base_parser()
    parser = argparse.ArgumentParser(prog="hafnet", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="verb", required=True)

    sub.add_parser("static", parents=[common])
    p_sweep = sub.add_parser("sweep", parents=[common])
    p_sweep.add_argument("--users", type=str, default="40,45,50,55,60",
                         help="comma list of user counts")
    sub.add_parser("timevary", parents=[common])
    sub.add_parser("converge", parents=[common])
    p_oracle = sub.add_parser("oracle", parents=[common])
    p_oracle.add_argument("--instances", type=int, default=50)
    p_oracle.add_argument("--max-users", type=int, default=5)
    p_oracle.add_argument("--max-bs", type=int, default=3)

    args = parser.parse_args(argv)
    cfg = _load(args)
    out = Path(args.out)

    if args.verb == "static":
        res = experiments.run_static_experiment(cfg, out, master_seed=args.seed, threads=args.threads)
        for s in res["summary"]:
            print(f"{s['method']:>20s}  mean HAF {s['haf_mean']:.6g}  (n={s['n_seeds']})")
        print(f"wrote {len(res['files'])} files to {out}")
        return 0

    if args.verb == "sweep":
        counts = [int(u) for u in args.users.split(",") if u.strip()]
        res = experiments.run_user_sweep(cfg, counts, out, master_seed=args.seed, threads=args.threads)
        print(f"wrote sweep over users {counts} to {out}")
        return 0

    if args.verb == "timevary":
        methods = None
        if args.methods:
            methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
        res = experiments.run_time_varying(cfg, out, master_seed=args.seed, methods=methods)
        print(f"wrote {len(res['rows'])} slot rows to {out}")
        return 0

    if args.verb == "converge":
        inst, _, _ = experiments.build_instance(cfg, args.seed, 0)
        _, _, trace = pricing.solve(inst, cfg.pricing, cfg.ra)
        out.mkdir(parents=True, exist_ok=True)
        path = experiments.emit_convergence_trace(trace, out / "convergence.csv")
        gap = trace.best_dual - trace.best_primal
        print(f"best primal {trace.best_primal:.6g}  best dual {trace.best_dual:.6g}  gap {gap:.3g}")
        print(f"wrote {path}")
        return 0

    if args.verb == "oracle":
        small = replace(cfg, num_users=min(cfg.num_users, args.max_users),
                        num_bs=min(cfg.num_bs, args.max_bs), force=True)
        rows = []
        sound = 0
        for k in range(args.instances):
            inst, _, _ = experiments.build_instance(small, args.seed, k)
            assoc, alloc, trace = pricing.solve(inst, small.pricing, small.ra)
            _, _, best = baselines.brute_force(inst, small.ra)
            primal = haf_objective(inst, assoc, alloc)
            cert = trace.certificate
            ok = cert.empirical_gap <= cert.theorem2_bound + 1e-6 and trace.best_dual >= best - 1e-6
            sound += ok
            rows.append([k, primal, best, trace.best_dual, cert.empirical_gap, cert.theorem2_bound, int(ok)])
        out.mkdir(parents=True, exist_ok=True)
        experiments._write_csv(out / "oracle.csv",
                               ["instance", "primal_haf", "brute_force_haf", "best_dual",
                                "empirical_gap", "theorem2_bound", "certificate_ok"],
                               rows)
        experiments._write_manifest(out, ["oracle.csv", "manifest.txt"])
        print(f"{sound}/{args.instances} certificates sound; wrote {out / 'oracle.csv'}")
        return 0 if sound == args.instances else 1

    return 2


if __name__ == "__main__":
    sys.exit(main())
