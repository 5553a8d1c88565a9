"""Rate-level quality metrics, reported overall and per priority group."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

import numpy as np

from .core import (
    RATE_FLOOR,
    Allocation,
    Association,
    Group,
    NetworkInstance,
    groupwise_haf,
    haf_objective,
    rates_of,
)


@dataclass(frozen=True)
class MetricsReport:
    """Snapshot of one decision's quality.

    Rates are normalized (bit/s/Hz share) except sum_rate*, which are in
    bit/s using the instance bandwidth. Groups with no users report 0.
    """

    haf_total: float
    haf_by_group: Dict[Group, float]
    sum_rate: float
    sum_rate_by_group: Dict[Group, float]
    pf: float
    pf_by_group: Dict[Group, float]
    avg_latency: float
    avg_latency_by_group: Dict[Group, float]
    min_rate: float
    min_rate_by_group: Dict[Group, float]
    per_user_rates: np.ndarray


def user_rates(
    inst: NetworkInstance, assoc: Association, alloc: Allocation, absolute: bool = False
) -> np.ndarray:
    """Per-user rates; normalized by default, bit/s when absolute=True."""
    r = rates_of(inst, assoc, alloc)
    return r * inst.bandwidth_hz if absolute else r


def report(inst: NetworkInstance, assoc: Association, alloc: Allocation) -> MetricsReport:
    """Pure summary of the decision; identical inputs give identical bytes."""
    r = rates_of(inst, assoc, alloc)
    floored = np.maximum(r, RATE_FLOOR)
    g = np.asarray(inst.alphas.group, dtype=int)
    w = inst.bandwidth_hz

    def by_group(values: np.ndarray, reducer) -> Dict[Group, float]:
        out = {}
        for grp in Group:
            sel = values[g == int(grp)]
            out[grp] = float(reducer(sel)) if sel.size else 0.0
        return out

    return MetricsReport(
        haf_total=haf_objective(inst, assoc, alloc),
        haf_by_group=groupwise_haf(inst, assoc, alloc),
        sum_rate=float(np.sum(r) * w),
        sum_rate_by_group=by_group(r, lambda v: np.sum(v) * w),
        pf=float(np.sum(np.log(floored))),
        pf_by_group=by_group(np.log(floored), np.sum),
        avg_latency=float(np.mean(1.0 / floored)),
        avg_latency_by_group=by_group(1.0 / floored, np.mean),
        min_rate=float(np.min(r)),
        min_rate_by_group=by_group(r, np.min),
        per_user_rates=r,
    )
