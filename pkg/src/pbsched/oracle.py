"""Exhaustive optimal PBS solver for tiny instances.

Every choice of distinct matchings is tried.  For a fixed choice the best
durations solve the covering LP

    minimise sum(t_M)  s.t.  sum(t_M for M containing e) >= w(e),  t >= 0,

which is solved exactly over the rationals.  Only maximal matchings are
searched: adding edges to a round never breaks feasibility or changes its
cost, and two rounds that grow into the same matching merge into one, so
some optimal schedule uses maximal matchings only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .instance import Instance, stats
from .matching import Matching
from .schedule import Round, Schedule

DEFAULT_EDGE_CAP = 12


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    optimal_cost: Fraction
    witness: Schedule
    matchings_considered: int


def _edges(inst: Instance, cap: int) -> list[tuple[int, int]]:
    edges = inst.edges
    if len(edges) > cap:
        raise InstanceTooLarge(f"{len(edges)} edges exceeds the oracle cap of {cap}")
    return edges


def _all_matchings(edges: list[tuple[int, int]]) -> list[Matching]:
    found: list[Matching] = []

    def grow(start, chosen, rows, cols):
        for k in range(start, len(edges)):
            r, c = edges[k]
            if r not in rows and c not in cols:
                m = chosen + ((r, c),)
                found.append(m)
                grow(k + 1, m, rows | {r}, cols | {c})

    grow(0, (), frozenset(), frozenset())
    return sorted(found, key=lambda m: (len(m), m))


def enumerate_matchings(inst: Instance, cap: int = DEFAULT_EDGE_CAP) -> list[Matching]:
    """All nonempty matchings of the real edges, by size then lexicographically."""
    return _all_matchings(_edges(inst, cap))


def maximal_matchings(inst: Instance, cap: int = DEFAULT_EDGE_CAP) -> list[Matching]:
    edges = _edges(inst, cap)
    out = []
    for m in _all_matchings(edges):
        rows = {r for r, _ in m}
        cols = {c for _, c in m}
        if all(r in rows or c in cols for r, c in edges):
            out.append(m)
    return out


def min_cover_durations(matchings: list[Matching], demand: dict[tuple[int, int], int]):
    """Exact optimum of the covering LP, as ``(total, durations)``.

    Solved through its dual ``max w.y s.t. sum(y_e, e in M) <= 1, y >= 0``,
    whose slack basis is feasible from the start; Bland's rule guarantees
    termination.  The primal durations are the dual's shadow prices.
    Returns ``None`` when some edge is covered by no matching.
    """
    edges = sorted(demand)
    if any(not any(e in m for m in matchings) for e in edges):
        return None
    n_rows, n_cols = len(matchings), len(edges)
    member = [[Fraction(1) if e in set(m) else Fraction(0) for e in edges] for m in matchings]
    # tableau columns: edge vars then slacks; last entry is the rhs
    tab = [member[i] + [Fraction(int(i == k)) for k in range(n_rows)] + [Fraction(1)]
           for i in range(n_rows)]
    obj = [Fraction(-demand[e]) for e in edges] + [Fraction(0)] * n_rows + [Fraction(0)]
    basis = [n_cols + i for i in range(n_rows)]
    width = n_cols + n_rows
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(n_rows):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            return None  # unreachable while every edge is covered
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(n_rows):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter
    return obj[-1], [obj[n_cols + i] for i in range(n_rows)]


def optimal_cost(inst: Instance, cap: int = DEFAULT_EDGE_CAP) -> OracleResult:
    edges = _edges(inst, cap)
    if not edges:
        return OracleResult(Fraction(0), Schedule(), 0)
    demand = {e: int(inst.weights[e]) for e in edges}
    candidates = maximal_matchings(inst, cap)
    lower = stats(inst).lower_bound
    w_load = stats(inst).w_load
    best = None
    for size in range(1, len(candidates) + 1):
        # every schedule with `size` rounds costs at least W + size * d
        if best is not None and w_load + size * inst.setup >= best[0]:
            break
        for subset in combinations(candidates, size):
            solved = min_cover_durations(list(subset), demand)
            if solved is None:
                continue
            total, durations = solved
            value = total + size * inst.setup
            if best is None or value < best[0]:
                best = (value, subset, durations)
        if best is not None and best[0] == lower:
            break
    value, subset, durations = best
    rounds = [Round(m, t if t.denominator != 1 else int(t)) for m, t in zip(subset, durations) if t > 0]
    witness = Schedule(tuple(rounds))
    # zero-duration rounds were dropped; they can only lower the cost
    value = min(value, witness.total_duration + inst.setup * witness.n_rounds)
    return OracleResult(Fraction(value), witness, len(candidates))
