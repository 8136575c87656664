"""Setup-cost sweeps: cost / lower-bound ratios per algorithm, as CSV.

Instance ``i`` at setup ``d`` is generated from
``SeedSequence([seed, d, i])`` (or ``[seed, i]`` with ``reuse_instances``),
so the instance set never depends on which algorithms run or on how the
work is split across processes.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .instance import generate_uniform, stats
from .schedule import ScheduleValidationError, validate
from .schedulers import os01pt, pick_hybrid, posa, sga

log = logging.getLogger(__name__)

ALGORITHM_NAMES = ("hsa", "os01pt", "posa", "sga")
CSV_HEADER = "d,algorithm,n_instances,mean_ratio,worst_ratio,mean_cost,mean_rounds"


@dataclass(frozen=True)
class SweepConfig:
    n: int = 30
    m: int = 30
    w_max: int = 120
    density: float = 1.0
    d_values: tuple[int, ...] = tuple(range(101))
    instances_per_d: int = 500
    seed: int = 0
    algorithms: tuple[str, ...] = ALGORITHM_NAMES
    reuse_instances: bool = False

    def __post_init__(self):
        object.__setattr__(self, "d_values", tuple(int(d) for d in self.d_values))
        object.__setattr__(self, "algorithms", tuple(sorted(set(self.algorithms))))
        if self.instances_per_d < 1:
            raise ValueError("instances_per_d must be >= 1")
        if not self.d_values:
            raise ValueError("d_values must be nonempty")
        if any(b <= a for a, b in zip(self.d_values, self.d_values[1:])):
            raise ValueError("d_values must be strictly increasing")
        if any(d < 0 for d in self.d_values):
            raise ValueError("d_values must be nonnegative")
        unknown = set(self.algorithms) - set(ALGORITHM_NAMES)
        if unknown or not self.algorithms:
            raise ValueError(f"algorithms must be a nonempty subset of {ALGORITHM_NAMES}, got {self.algorithms}")


PRESETS = {
    "paper": SweepConfig(),
    "paper-sparse": SweepConfig(density=0.9),
    "ci": SweepConfig(d_values=tuple(range(0, 101, 5)), instances_per_d=50),
}


@dataclass(frozen=True)
class SweepRow:
    d: int
    algorithm: str
    n_instances: int
    mean_ratio: Fraction
    worst_ratio: Fraction
    mean_cost: Fraction
    mean_rounds: Fraction


@dataclass(frozen=True)
class SweepReport:
    config: SweepConfig | None
    rows: tuple[SweepRow, ...] = field(default=())

    def row(self, d: int, algorithm: str) -> SweepRow:
        for r in self.rows:
            if r.d == d and r.algorithm == algorithm:
                return r
        raise KeyError((d, algorithm))

    def algorithms(self) -> set[str]:
        return {r.algorithm for r in self.rows}

    def d_values(self) -> list[int]:
        return sorted({r.d for r in self.rows})

    def to_csv(self) -> bytes:
        lines = [CSV_HEADER]
        for r in sorted(self.rows, key=lambda r: (r.d, r.algorithm)):
            lines.append(",".join([str(r.d), r.algorithm, str(r.n_instances), decimal6(r.mean_ratio),
                                   decimal6(r.worst_ratio), decimal6(r.mean_cost), decimal6(r.mean_rounds)]))
        return ("\n".join(lines) + "\n").encode("ascii")


def decimal6(x: Fraction) -> str:
    """Nonnegative rational to 6 decimals, round half to even."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("only nonnegative values are formatted")
    q, r = divmod(x.numerator * 10**6, x.denominator)
    if 2 * r > x.denominator or (2 * r == x.denominator and q % 2):
        q += 1
    return f"{q // 10**6}.{q % 10**6:06d}"


def instance_seed(cfg: SweepConfig, d: int, i: int) -> list[int]:
    return [cfg.seed, i] if cfg.reuse_instances else [cfg.seed, d, i]


def _checked(report, inst, d, i):
    v = validate(report.schedule, inst)
    if v is not None:
        raise ScheduleValidationError(v, f"{report.algorithm} at d={d} replicate={i}: ")
    if report.cost < report.lower_bound:
        raise AssertionError(f"{report.algorithm} at d={d} replicate={i}: cost below lower bound")
    return report


def solve_one(cfg: SweepConfig, d: int, i: int) -> list[tuple[str, int, int, int]]:
    """``(algorithm, cost, rounds, lower_bound)`` for every configured algorithm."""
    inst = generate_uniform(cfg.n, cfg.m, cfg.w_max, cfg.density, d, instance_seed(cfg, d, i))
    want = set(cfg.algorithms)
    got = {}
    if want & {"posa", "hsa"}:
        got["posa"] = _checked(posa(inst), inst, d, i)
    if want & {"os01pt", "hsa"}:
        got["os01pt"] = _checked(os01pt(inst), inst, d, i)
    if "hsa" in want:
        got["hsa"] = pick_hybrid(got["posa"], got["os01pt"])
    if "sga" in want:
        got["sga"] = _checked(sga(inst), inst, d, i)
    return [(a, got[a].cost, got[a].n_rounds, got[a].lower_bound) for a in cfg.algorithms]


def _solve_chunk(args):
    cfg, tasks = args
    return [solve_one(cfg, d, i) for d, i in tasks]


def _results(cfg: SweepConfig, jobs: int) -> Iterable[tuple[int, list]]:
    tasks = [(d, i) for d in cfg.d_values for i in range(cfg.instances_per_d)]
    if jobs <= 1:
        for d, i in tasks:
            yield d, solve_one(cfg, d, i)
        return
    size = max(1, len(tasks) // (jobs * 8))
    chunks = [tasks[k:k + size] for k in range(0, len(tasks), size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map keeps submission order, so the fold below is order-stable
        for chunk, out in zip(chunks, pool.map(_solve_chunk, [(cfg, c) for c in chunks])):
            for (d, _), res in zip(chunk, out):
                yield d, res


def run_sweep(cfg: SweepConfig, jobs: int = 1) -> SweepReport:
    acc: dict[tuple[int, str], list] = {}
    last_d = None
    for d, res in _results(cfg, jobs):
        if d != last_d:
            log.info("sweep d=%d", d)
            last_d = d
        for alg, c, rounds, lb in res:
            ratio = Fraction(c, lb) if lb else Fraction(1)
            a = acc.setdefault((d, alg), [0, Fraction(0), None, 0, 0])
            a[0] += 1
            a[1] += ratio
            a[2] = ratio if a[2] is None else max(a[2], ratio)
            a[3] += c
            a[4] += rounds
    rows = tuple(SweepRow(d, alg, k, s / k, worst, Fraction(cs, k), Fraction(rs, k))
                 for (d, alg), (k, s, worst, cs, rs) in sorted(acc.items()))
    return SweepReport(cfg, rows)


def _require(report: SweepReport, *names: str):
    missing = [a for a in names if a not in report.algorithms()]
    if missing:
        raise KeyError(f"report lacks algorithm(s) {missing}")


def crossover(report: SweepReport) -> int | None:
    """Smallest d where OS01PT's mean ratio is no worse than POSA's."""
    _require(report, "posa", "os01pt")
    for d in report.d_values():
        if report.row(d, "os01pt").mean_ratio <= report.row(d, "posa").mean_ratio:
            return d
    return None


@dataclass(frozen=True)
class Comparison:
    a: str
    b: str
    gaps: tuple[tuple[int, Fraction], ...]

    @property
    def max_gap(self) -> Fraction:
        return max(g for _, g in self.gaps)

    @property
    def argmax_d(self) -> int:
        return max(self.gaps, key=lambda dg: dg[1])[0]


def compare(report: SweepReport, a: str, b: str) -> Comparison:
    """Relative gap ``(mean_ratio(b) - mean_ratio(a)) / mean_ratio(a)`` per d;
    positive means ``a`` is better."""
    _require(report, a, b)
    gaps = []
    for d in report.d_values():
        ra = report.row(d, a).mean_ratio
        rb = report.row(d, b).mean_ratio
        gaps.append((d, (rb - ra) / ra))
    return Comparison(a, b, tuple(gaps))


def config_from(preset: str | None = None, **overrides) -> SweepConfig:
    base = PRESETS[preset] if preset else SweepConfig()
    return replace(base, **{k: v for k, v in overrides.items() if v is not None})


def parse_csv(text: bytes | str) -> SweepReport:
    """Read a CSV written by :meth:`SweepReport.to_csv` (values rounded)."""
    if isinstance(text, bytes):
        text = text.decode("ascii")
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("not a sweep CSV")
    rows = []
    for line in lines[1:]:
        d, alg, k, *vals = line.split(",")
        rows.append(SweepRow(int(d), alg, int(k), *(Fraction(v) for v in vals)))
    return SweepReport(None, tuple(rows))


def sweep_algorithms(names: Sequence[str]) -> tuple[str, ...]:
    out = tuple(a.strip() for a in names if a.strip())
    bad = set(out) - set(ALGORITHM_NAMES)
    if bad:
        raise ValueError(f"unknown algorithm(s) {sorted(bad)}")
    return out
