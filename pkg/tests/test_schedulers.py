import numpy as np
import pytest
from hypothesis import given, settings

from pbsched.instance import Instance, generate_uniform, stats
from pbsched.schedule import format_schedule, validate
from pbsched.schedulers import hsa, os01pt, posa, sga, solve

from conftest import instances

EX = Instance([[2, 3], [4, 1]], 2)


def rounds(report):
    return [(r.matching, r.duration) for r in report.schedule.rounds]


def test_posa_examples():
    r = posa(EX)
    assert rounds(r) == [(((0, 1), (1, 0)), 4), (((0, 0), (1, 1)), 2)]
    assert (r.total_duration, r.n_rounds, r.cost) == (6, 2, 10)
    r = posa(Instance([[3, 0], [0, 5]], 2))
    # slack lands on (0, 0); the single padded matching carries both edges
    assert rounds(r) == [(((0, 0), (1, 1)), 5)] and r.cost == 7
    assert posa(Instance([[7]], 3)).cost == 10


def test_os01pt_examples():
    r = os01pt(EX)
    assert rounds(r) == [(((0, 1), (1, 0)), 4), (((0, 0), (1, 1)), 2)]
    assert r.cost == 10 and r.n_rounds == stats(EX).delta
    r = os01pt(Instance([[4], [2]], 5))
    assert rounds(r) == [(((0, 0),), 4), (((1, 0),), 2)] and r.cost == 16 == stats(Instance([[4], [2]], 5)).lower_bound
    assert os01pt(Instance([[7]], 3)).cost == 10


def test_hsa_tie_prefers_posa():
    r = hsa(EX)
    assert r.algorithm == "hsa" and r.cost == 10
    assert r.schedule is posa(EX).schedule or r.schedule == posa(EX).schedule


def test_hsa_picks_strictly_cheaper():
    inst = generate_uniform(10, 10, 50, 1.0, 40, 1)
    p, o = posa(inst), os01pt(inst)
    assert o.cost < p.cost
    assert hsa(inst).schedule == o.schedule


def test_hsa_threshold_mode():
    inst = generate_uniform(8, 8, 50, 1.0, 0, 2)
    for d in (0, 8, 9, 30):
        x = inst.with_setup(d)
        got = hsa(x, mode="threshold")
        want = os01pt(x) if d >= 9 else posa(x)
        assert got.schedule == want.schedule
        assert hsa(x, mode="threshold", threshold=31).schedule == posa(x).schedule
    with pytest.raises(ValueError):
        hsa(inst, mode="bogus")


def test_sga_examples():
    r = sga(Instance([[2, 3], [4, 1]], 3))
    assert rounds(r) == [(((0, 1), (1, 0)), 4), (((0, 0), (1, 1)), 2)]
    assert r.cost == 12
    inst = generate_uniform(6, 6, 20, 0.8, 0, 5)
    assert sga(inst).schedule == posa(inst).schedule
    big = inst.with_setup(21)
    assert sga(big).schedule == os01pt(big).schedule


def test_degenerate_instance():
    inst = Instance([[0, 0], [0, 0]], 5)
    for name in ("posa", "os01pt", "hsa", "sga"):
        r = solve(inst, name)
        assert r.cost == 0 and r.n_rounds == 0 and validate(r.schedule, inst) is None


def test_solve_rejects_unknown():
    with pytest.raises(ValueError):
        solve(EX, "lla")


def test_backends_identical_schedules():
    for seed in range(4):
        inst = generate_uniform(12, 9, 40, 0.8, 4, seed)
        for algo in (posa, os01pt, sga):
            assert (format_schedule(algo(inst, backend="numba").schedule)
                    == format_schedule(algo(inst, backend="numpy").schedule))


@settings(max_examples=150, deadline=None)
@given(instances(max_n=12, max_w=60))
def test_invariants(inst):
    s = stats(inst)
    p, o, h, g = posa(inst), os01pt(inst), hsa(inst), sga(inst)
    for r in (p, o, h, g):
        assert validate(r.schedule, inst) is None
        assert r.cost >= s.lower_bound
        assert r.cost == r.total_duration + inst.setup * r.n_rounds
        assert r.ratio_to_lower_bound >= 1
    assert p.total_duration == s.w_load
    assert p.cost - s.w_load == p.n_rounds * inst.setup
    n = max(inst.weights.shape)
    assert p.n_rounds <= max(n * n - 2 * n + 2, 1)
    assert o.n_rounds <= s.delta
    assert h.cost == min(p.cost, o.cost)


@settings(max_examples=60, deadline=None)
@given(instances(max_n=10, max_w=60))
def test_real_objective_variant_also_exact(inst):
    r = posa(inst, objective="real")
    assert validate(r.schedule, inst) is None
    assert r.total_duration == stats(inst).w_load


@pytest.mark.parametrize("shape", [(1, 1), (1, 5), (7, 3), (12, 12), (30, 30)])
def test_os01pt_complete_uses_delta_rounds(shape):
    inst = generate_uniform(*shape, 120, 1.0, 3, sum(shape))
    assert os01pt(inst).n_rounds == stats(inst).delta


def test_setup_zero_posa_optimal():
    inst = generate_uniform(15, 15, 120, 1.0, 0, 8)
    assert posa(inst).cost == stats(inst).lower_bound


def test_deterministic():
    inst = generate_uniform(20, 20, 120, 0.9, 7, 99)
    for algo in (posa, os01pt, hsa, sga):
        assert format_schedule(algo(inst).schedule) == format_schedule(algo(inst).schedule)
