"""POSA, OS01PT, HSA and SGA.

POSA keeps the transmission time at its minimum ``W`` and pays for it in
rounds; OS01PT uses the minimum number of rounds ``delta`` and pays in
idle time.  HSA runs both and keeps the cheaper, SGA schedules the
messages at least as long as the setup cost with POSA and the short ones
with OS01PT.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from ._backend import get_kernels
from .instance import Instance, stats
from .matching import NoPerfectMatching, regularize, saturate_loads
from .schedule import Round, Schedule, cost, normalize

DEFAULT_THRESHOLD = 9


@dataclass(frozen=True)
class SolveReport:
    algorithm: str
    schedule: Schedule
    cost: int
    n_rounds: int
    total_duration: int
    lower_bound: int

    @property
    def ratio_to_lower_bound(self) -> Fraction:
        if self.lower_bound == 0:
            return Fraction(1)
        return Fraction(self.cost, self.lower_bound)

    def summary(self) -> str:
        r = self.ratio_to_lower_bound
        return (f"algo={self.algorithm} cost={self.cost} rounds={self.n_rounds} "
                f"duration={self.total_duration} lower_bound={self.lower_bound} "
                f"ratio={float(r):.6f} ratio_exact={r.numerator}/{r.denominator}")


def _report(name: str, s: Schedule, inst: Instance) -> SolveReport:
    return SolveReport(name, s, int(cost(s, inst.setup)), s.n_rounds,
                       int(s.total_duration), stats(inst).lower_bound)


def _to_rounds(assign: np.ndarray, dur: np.ndarray, n_sources: int, n_dests: int) -> list[Round]:
    rounds = []
    for cols, t in zip(assign.tolist(), dur.tolist()):
        pairs = tuple((i, j) for i, j in enumerate(cols) if j >= 0 and i < n_sources and j < n_dests)
        rounds.append(Round(pairs, int(t)))
    return rounds


def posa_schedule(weights: np.ndarray, objective: str = "padded", backend: str | None = None) -> Schedule:
    """Preemptive schedule of total duration ``W`` for a bare weight matrix."""
    inst = Instance(weights, 0)
    if not inst.weights.any():
        return Schedule()
    if objective not in ("padded", "real"):
        raise ValueError(f"objective must be 'padded' or 'real', got {objective!r}")
    sat = saturate_loads(inst)
    ok, assign, dur = get_kernels(backend).posa_rounds(sat.real, sat.slack, objective == "padded")
    if not ok:
        raise NoPerfectMatching("saturated matrix lost its perfect matching")
    return normalize(_to_rounds(assign, dur, inst.n_sources, inst.n_dests))


def os01pt_schedule(weights: np.ndarray, backend: str | None = None) -> Schedule:
    """Schedule with at most ``delta`` rounds for a bare weight matrix."""
    inst = Instance(weights, 0)
    if not inst.weights.any():
        return Schedule()
    reg = regularize(inst)
    ok, assign, dur = get_kernels(backend).os01pt_rounds(reg.real, reg.mult, reg.target)
    if not ok:
        raise NoPerfectMatching("regular multigraph lost its perfect matching")
    return normalize(_to_rounds(assign, dur, inst.n_sources, inst.n_dests))


def posa(inst: Instance, objective: str = "padded", backend: str | None = None) -> SolveReport:
    """Decompose the load-saturated matrix into perfect matchings.

    Each step takes the perfect matching of maximum remaining weight
    (``objective="padded"`` scores real plus slack, ``"real"`` only the real
    part) and holds it for the smallest remaining entry it covers.
    """
    return _report("posa", posa_schedule(inst.weights, objective, backend), inst)


def os01pt(inst: Instance, backend: str | None = None) -> SolveReport:
    """Peel ``delta`` perfect matchings off the regularized multigraph;
    each message goes out whole in the first round that picks it."""
    return _report("os01pt", os01pt_schedule(inst.weights, backend), inst)


def pick_hybrid(p: SolveReport, o: SolveReport) -> SolveReport:
    # OS01PT only on a strict improvement
    chosen = o if o.cost < p.cost else p
    return SolveReport("hsa", chosen.schedule, chosen.cost, chosen.n_rounds,
                       chosen.total_duration, chosen.lower_bound)


def hsa(inst: Instance, mode: str = "hybrid", threshold: int = DEFAULT_THRESHOLD,
        backend: str | None = None) -> SolveReport:
    """``mode="hybrid"``: cheaper of POSA and OS01PT, ties to POSA.
    ``mode="threshold"``: OS01PT alone when ``setup >= threshold``, else POSA."""
    if mode == "hybrid":
        return pick_hybrid(posa(inst, backend=backend), os01pt(inst, backend=backend))
    if mode == "threshold":
        branch = os01pt if inst.setup >= threshold else posa
        r = branch(inst, backend=backend)
        return SolveReport("hsa", r.schedule, r.cost, r.n_rounds, r.total_duration, r.lower_bound)
    raise ValueError(f"mode must be 'hybrid' or 'threshold', got {mode!r}")


def sga(inst: Instance, backend: str | None = None) -> SolveReport:
    w = inst.weights
    heavy = np.where(w >= inst.setup, w, 0)
    light = w - heavy
    s = posa_schedule(heavy, backend=backend) + os01pt_schedule(light, backend=backend)
    return _report("sga", s, inst)


ALGORITHMS: dict[str, Callable[..., SolveReport]] = {
    "hsa": hsa,
    "os01pt": os01pt,
    "posa": posa,
    "sga": sga,
}


def solve(inst: Instance, algorithm: str, **kwargs) -> SolveReport:
    try:
        fn = ALGORITHMS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {sorted(ALGORITHMS)}") from None
    return fn(inst, **kwargs)
