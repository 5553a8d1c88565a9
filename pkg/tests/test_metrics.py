import numpy as np
import pytest

from hafnet.core import Allocation, Association, Group, RATE_FLOOR, haf_objective
from hafnet.metrics import report, user_rates
from conftest import make_instance, random_instance


def _simple():
    # two users on separate BSs, full bandwidth each
    inst = make_instance([[2.0, 1.0], [1.0, 3.0]], [0.5, 2.0])
    assoc = Association(np.array([0, 1]))
    y = np.array([[1.0, 0.0], [0.0, 1.0]])
    return inst, assoc, Allocation(y=y, lam=np.array([1.0, 1.0]))


def test_user_rates_normalized_and_absolute():
    inst, assoc, alloc = _simple()
    r = user_rates(inst, assoc, alloc)
    assert r == pytest.approx([2.0, 3.0])
    r_abs = user_rates(inst, assoc, alloc, absolute=True)
    assert r_abs == pytest.approx([4.0e7, 6.0e7])  # 20 MHz


def test_report_totals_match_core():
    rng = np.random.default_rng(14)
    inst = random_instance(rng, 10, 3)
    assoc = Association(rng.integers(0, 3, size=10))
    from hafnet.ra import allocate

    alloc = allocate(inst, assoc)
    rep = report(inst, assoc, alloc)
    assert rep.haf_total == pytest.approx(haf_objective(inst, assoc, alloc), rel=1e-12)
    assert sum(rep.haf_by_group.values()) == pytest.approx(rep.haf_total, rel=1e-10)
    assert rep.sum_rate == pytest.approx(sum(rep.sum_rate_by_group.values()), rel=1e-10)
    assert rep.min_rate == pytest.approx(rep.per_user_rates.min())


def test_report_simple_values():
    inst, assoc, alloc = _simple()
    rep = report(inst, assoc, alloc)
    assert rep.sum_rate == pytest.approx(5.0 * 20e6, rel=1e-12)
    # groups: user0 in A1 (alpha 0.5), user1 in A3 (alpha 2.0)
    assert rep.sum_rate_by_group[Group.A1] == pytest.approx(2.0 * 20e6, rel=1e-12)
    assert rep.sum_rate_by_group[Group.A3] == pytest.approx(3.0 * 20e6, rel=1e-12)
    assert rep.sum_rate_by_group[Group.A2] == 0.0
    assert rep.min_rate_by_group[Group.A2] == 0.0
    assert rep.pf == pytest.approx(np.log(2.0) + np.log(3.0), rel=1e-12)
    assert rep.avg_latency == pytest.approx(0.5 * (1 / 2 + 1 / 3), rel=1e-12)
    assert rep.min_rate == pytest.approx(2.0)


def test_report_floors_only_ratio_metrics():
    # zero-bandwidth user: pf/latency use the floor, min_rate stays 0
    inst = make_instance([[2.0], [2.0]], [0.5, 0.5])
    assoc = Association(np.array([0, 0]))
    alloc = Allocation(y=np.array([[1.0], [0.0]]), lam=np.array([1.0]))
    rep = report(inst, assoc, alloc)
    assert rep.min_rate == 0.0
    assert rep.pf == pytest.approx(np.log(2.0) + np.log(RATE_FLOOR), rel=1e-9)
    assert rep.avg_latency == pytest.approx(0.5 * (0.5 + 1.0 / RATE_FLOOR), rel=1e-9)
    assert np.isfinite(rep.avg_latency)
