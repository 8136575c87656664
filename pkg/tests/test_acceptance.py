"""Acceptance gate.  Each test records a PASS/FAIL line shown in the
terminal summary.

The sweep criteria (6, 7, 8) run the full `paper` preset, about a quarter of
an hour on one core.  ``PBS_SCHED_ACCEPTANCE=ci`` swaps in the reduced
preset for a quick look; the summary line says which one ran.
"""
import itertools
import os
import time

import numpy as np
import pytest

from pbsched.bench import PRESETS, compare, crossover, run_sweep
from pbsched.instance import Instance, generate_uniform, stats
from pbsched.oracle import optimal_cost
from pbsched.schedule import format_schedule, validate
from pbsched.schedulers import hsa, os01pt, pick_hybrid, posa, sga

SWEEP_PRESET = "ci" if os.environ.get("PBS_SCHED_ACCEPTANCE") == "ci" else "paper"


def validity_suite(seed=2024, count=1000):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n, m = (int(x) for x in rng.integers(1, 31, size=2))
        density = float(rng.choice([0.5, 0.9, 1.0]))
        d = int(rng.integers(0, 101))
        out.append((generate_uniform(n, m, 120, density, d, [seed, i]), density))
    return out


@pytest.fixture(scope="module")
def validity_runs():
    t0 = time.perf_counter()
    runs = []
    for inst, density in validity_suite():
        p, o, g = posa(inst), os01pt(inst), sga(inst)
        h = hsa(inst)
        checks = {name: validate(r.schedule, inst) for name, r in
                  (("posa", p), ("os01pt", o), ("hsa", h), ("sga", g))}
        runs.append((inst, density, p, o, h, g, checks))
    return runs, time.perf_counter() - t0


def test_1_validity(validity_runs, criterion):
    runs, elapsed = validity_runs
    bad = [(k, name) for k, (inst, _, p, o, h, g, checks) in enumerate(runs)
           for name, v in checks.items() if v is not None]
    below = [k for k, (inst, _, p, o, h, g, _) in enumerate(runs)
             if min(p.cost, o.cost, h.cost, g.cost) < stats(inst).lower_bound]
    ok = not bad and not below and elapsed < 120
    criterion("1 validity", ok, f"{len(runs)} instances x 4 algorithms, {len(bad)} invalid, "
              f"{len(below)} below L, {elapsed:.1f}s (< 120s)")
    assert not bad and not below
    assert elapsed < 120


def test_2_posa_exact_makespan(validity_runs, criterion):
    runs, _ = validity_runs
    off = [k for k, (inst, _, p, *_rest) in enumerate(runs) if p.total_duration != stats(inst).w_load]
    criterion("2 posa duration = W", not off, f"{len(off)} mismatches of {len(runs)}")
    assert not off


def test_3_os01pt_rounds(validity_runs, criterion):
    runs, _ = validity_runs
    over = [k for k, (inst, _, p, o, *_r) in enumerate(runs) if o.n_rounds > stats(inst).delta]
    complete = [(inst, o) for inst, dens, p, o, *_r in runs if dens == 1.0]
    unequal = [inst for inst, o in complete if o.n_rounds != stats(inst).delta]
    ok = not over and not unequal
    criterion("3 os01pt rounds", ok, f"{len(over)} exceed delta; {len(unequal)} of {len(complete)} "
              f"complete instances differ from delta")
    assert ok


def test_4_hybrid_identity(validity_runs, criterion):
    runs, _ = validity_runs
    off = [k for k, (inst, _, p, o, h, *_r) in enumerate(runs) if h.cost != min(p.cost, o.cost)]
    criterion("4 hsa = min(posa, os01pt)", not off, f"{len(off)} mismatches of {len(runs)}")
    assert not off


def tiny_suite():
    for n, m in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        for cells in itertools.product(range(5), repeat=n * m):
            for d in range(4):
                yield Instance(np.array(cells).reshape(n, m), d)
    rng = np.random.default_rng(77)
    for _ in range(200):
        yield Instance(rng.integers(0, 5, (3, 3)), int(rng.integers(0, 4)))


def test_5_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    count = 0
    beaten = []
    worst = 0
    strict = 0
    for inst in tiny_suite():
        count += 1
        opt = optimal_cost(inst).optimal_cost
        reports = [posa(inst), os01pt(inst), hsa(inst), sga(inst)]
        if any(r.cost < opt for r in reports):
            beaten.append(inst)
        if opt > 0:
            worst = max(worst, reports[2].cost / opt)
        if opt > stats(inst).lower_bound:
            strict += 1
    elapsed = time.perf_counter() - t0
    ok = not beaten and worst <= 1.5 and strict >= 1 and elapsed < 300
    criterion("5 oracle", ok, f"{count} instances, {len(beaten)} below optimum, worst hsa/opt "
              f"{float(worst):.4f} (<= 1.5), {strict} with opt > L, {elapsed:.1f}s (< 300s)")
    assert not beaten
    assert worst <= 1.5
    assert strict >= 1
    assert elapsed < 300


@pytest.fixture(scope="module")
def ci_sweep():
    t0 = time.perf_counter()
    rep = run_sweep(PRESETS["ci"])
    return rep, time.perf_counter() - t0


@pytest.fixture(scope="module")
def paper_sweep(ci_sweep):
    if SWEEP_PRESET == "ci":
        return ci_sweep
    t0 = time.perf_counter()
    rep = run_sweep(PRESETS["paper"])
    return rep, time.perf_counter() - t0


def test_6_crossover(paper_sweep, ci_sweep, criterion):
    rep, elapsed = paper_sweep
    _, ci_elapsed = ci_sweep
    d = crossover(rep)
    limit = 1800 if SWEEP_PRESET == "paper" else 180
    ok = d is not None and 5 <= d <= 15 and elapsed < limit and ci_elapsed < 180
    criterion("6 crossover", ok, f"[{SWEEP_PRESET}] posa->os01pt at d={d} (want 5..15); "
              f"sweep {elapsed:.0f}s (< {limit}s), ci preset {ci_elapsed:.0f}s (< 180s)")
    assert d is not None and 5 <= d <= 15
    assert elapsed < limit
    assert ci_elapsed < 180


def test_7_hsa_worst_ratio(paper_sweep, criterion):
    rep, _ = paper_sweep
    rows = [r for r in rep.rows if r.algorithm == "hsa"]
    worst = max(rows, key=lambda r: r.worst_ratio)
    ok = worst.worst_ratio <= 1.35
    criterion("7 hsa worst ratio", ok, f"[{SWEEP_PRESET}] max worst_ratio {float(worst.worst_ratio):.6f} "
              f"at d={worst.d} (<= 1.35)")
    assert ok


def test_8_hsa_vs_sga(paper_sweep, criterion):
    rep, _ = paper_sweep
    cmp = compare(rep, "hsa", "sga")
    worse = [d for d, g in cmp.gaps if g < 0]
    ok = not worse and cmp.max_gap >= 0.02
    criterion("8 hsa vs sga", ok, f"[{SWEEP_PRESET}] hsa worse at {len(worse)} d values; max gap "
              f"{float(cmp.max_gap):.4f} at d={cmp.argmax_d} (>= 0.02)")
    assert not worse
    assert cmp.max_gap >= 0.02


def test_9_determinism(ci_sweep, validity_runs, criterion):
    rep, _ = ci_sweep
    csv = rep.to_csv()
    same_serial = run_sweep(PRESETS["ci"]).to_csv() == csv
    same_parallel = run_sweep(PRESETS["ci"], jobs=2).to_csv() == csv
    runs, _ = validity_runs
    sample = runs[::20]
    same_sched = all(
        format_schedule(a.schedule) == format_schedule(b.schedule)
        for inst, _, p, o, h, g, _c in sample
        for a, b in ((p, posa(inst)), (o, os01pt(inst)), (h, pick_hybrid(posa(inst), os01pt(inst))),
                     (g, sga(inst))))
    same_backend = all(
        format_schedule(posa(inst).schedule) == format_schedule(posa(inst, backend="numpy").schedule)
        and format_schedule(os01pt(inst).schedule) == format_schedule(os01pt(inst, backend="numpy").schedule)
        for inst, *_rest in runs[::100])
    ok = same_serial and same_parallel and same_sched and same_backend
    criterion("9 determinism", ok, f"ci CSV repeat={same_serial}, jobs=2={same_parallel}; "
              f"schedules repeat={same_sched}, numba vs numpy={same_backend}")
    assert ok
