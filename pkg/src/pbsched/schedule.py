"""Schedules: ordered rounds, each a matching held for a duration.

A schedule costs the sum of its round durations plus ``setup`` per round.
Text format, one round per line after the count, indices 0-based::

    N
    t k r1 c1 r2 c2 ... rk ck
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from .instance import Instance, ParseError, _ints
from .matching import Matching

Duration = Union[int, Fraction]


@dataclass(frozen=True)
class Round:
    matching: Matching
    duration: Duration

    def __post_init__(self):
        object.__setattr__(self, "matching", tuple(sorted((int(r), int(c)) for r, c in self.matching)))


@dataclass(frozen=True)
class Schedule:
    rounds: tuple[Round, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rounds", tuple(self.rounds))

    @property
    def n_rounds(self) -> int:
        return len(self.rounds)

    @property
    def total_duration(self) -> Duration:
        return sum((r.duration for r in self.rounds), 0)

    def __add__(self, other: "Schedule") -> "Schedule":
        return Schedule(self.rounds + other.rounds)


@dataclass(frozen=True)
class Violation:
    kind: str            # "matching" | "edge" | "coverage" | "duration"
    round_index: int | None
    edge: tuple[int, int] | None
    message: str

    def __str__(self):
        return self.message


class ScheduleValidationError(RuntimeError):
    def __init__(self, violation: Violation, context: str = ""):
        super().__init__(f"{context}{violation}")
        self.violation = violation


def cost(s: Schedule, setup: int) -> Duration:
    return s.total_duration + setup * s.n_rounds


def normalize(rounds: Iterable[Round]) -> Schedule:
    """Drop empty rounds and merge neighbours with identical matchings."""
    out: list[Round] = []
    for r in rounds:
        if not r.matching or r.duration <= 0:
            continue
        if out and out[-1].matching == r.matching:
            out[-1] = Round(r.matching, out[-1].duration + r.duration)
        else:
            out.append(r)
    return Schedule(tuple(out))


def validate(s: Schedule, inst: Instance, integral: bool = True) -> Violation | None:
    """First feasibility violation of ``s`` against ``inst``, or ``None``.

    With ``integral=False`` durations only need to be positive, which is
    what the exact oracle's rational witnesses require.
    """
    if _looks_valid(s, inst):
        return None
    return _first_violation(s, inst, integral)


def _looks_valid(s: Schedule, inst: Instance) -> bool:
    # vectorised accept-only check; any doubt falls through to the scan
    if not s.rounds:
        return not inst.weights.any()
    if not all(type(r.duration) is int and r.duration >= 1 for r in s.rounds):
        return False
    sizes = [len(r.matching) for r in s.rounds]
    pairs = np.array([e for r in s.rounds for e in r.matching], dtype=np.int64).reshape(-1, 2)
    rid = np.repeat(np.arange(len(sizes)), sizes)
    rows, cols = pairs[:, 0], pairs[:, 1]
    n, m = inst.weights.shape
    if ((rows < 0) | (rows >= n) | (cols < 0) | (cols >= m)).any():
        return False
    if (inst.weights[rows, cols] == 0).any():
        return False
    if np.unique(rid * n + rows).size != rows.size or np.unique(rid * m + cols).size != cols.size:
        return False
    got = np.zeros((n, m), dtype=np.int64)
    np.add.at(got, (rows, cols), np.array([r.duration for r in s.rounds], dtype=np.int64)[rid])
    return bool((got >= inst.weights).all())


def _first_violation(s: Schedule, inst: Instance, integral: bool) -> Violation | None:
    w = inst.weights
    covered: dict[tuple[int, int], Duration] = {}
    for k, rnd in enumerate(s.rounds):
        d = rnd.duration
        if integral and (not isinstance(d, int) or d < 1):
            return Violation("duration", k, None, f"round {k}: duration {d} is not a positive integer")
        if d <= 0:
            return Violation("duration", k, None, f"round {k}: duration {d} is not positive")
        rows, cols = set(), set()
        for e in rnd.matching:
            r, c = e
            if r in rows or c in cols:
                return Violation("matching", k, e, f"round {k}: {e} shares a node with another pair")
            rows.add(r)
            cols.add(c)
            if not (0 <= r < inst.n_sources and 0 <= c < inst.n_dests) or w[r, c] == 0:
                return Violation("edge", k, e, f"round {k}: {e} is not an edge of the instance")
            covered[e] = covered.get(e, 0) + d
    for e in inst.edges:
        if covered.get(e, 0) < w[e]:
            return Violation("coverage", None, e,
                             f"edge {e}: weight {w[e]} but only {covered.get(e, 0)} scheduled")
    return None


def format_schedule(s: Schedule) -> bytes:
    lines = [str(s.n_rounds)]
    for rnd in s.rounds:
        parts = [str(rnd.duration), str(len(rnd.matching))]
        for r, c in rnd.matching:
            parts += [str(r), str(c)]
        lines.append(" ".join(parts))
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_schedule(text: bytes | str) -> Schedule:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError(1, "missing round count")
    head = _ints(lines[0], 1)
    if len(head) != 1:
        raise ParseError(1, "first line must hold the round count only")
    if len(lines) - 1 != head[0]:
        raise ParseError(1, f"round count {head[0]} but {len(lines) - 1} round lines")
    rounds = []
    for k, line in enumerate(lines[1:], start=2):
        vals = _ints(line, k)
        if len(vals) < 2 or len(vals) != 2 + 2 * vals[1]:
            raise ParseError(k, "round line must be 't k' followed by k row/column pairs")
        pairs = tuple(zip(vals[2::2], vals[3::2]))
        rounds.append(Round(pairs, vals[0]))
    return Schedule(tuple(rounds))
