"""Perfect matchings and the padding that guarantees they exist.

Both schedulers work on a square matrix: the instance is padded with empty
rows or columns up to ``n = max(n_sources, n_dests)`` (padding goes after the
real nodes, so real indices never move).  :func:`regularize` then adds
filler multiplicity until every line has degree ``delta``, and
:func:`saturate_loads` adds slack until every line carries load ``W``.
Either way a perfect matching exists at every step of the extraction.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import get_kernels
from .instance import Instance, stats

Matching = tuple[tuple[int, int], ...]


class NoPerfectMatching(ValueError):
    pass


def max_weight_perfect_matching(weights, mask, backend: str | None = None) -> Matching:
    """Perfect matching over the ``True`` cells of ``mask`` with maximum
    total weight.

    Among optimal matchings the one whose column vector (column of row 0,
    column of row 1, ...) is lexicographically smallest is returned, so the
    result is a function of the inputs alone.

    Raises :class:`NoPerfectMatching` if ``mask`` admits none.
    """
    w = np.ascontiguousarray(weights, dtype=np.int64)
    m = np.ascontiguousarray(mask, dtype=np.bool_)
    if w.ndim != 2 or w.shape[0] != w.shape[1] or m.shape != w.shape:
        raise ValueError("weights and mask must be equal-shaped square matrices")
    ok, cols = get_kernels(backend).lexmax_assignment(w, m)
    if not ok:
        raise NoPerfectMatching("mask admits no perfect matching")
    return tuple((i, int(j)) for i, j in enumerate(cols))


def pad_square(weights: np.ndarray) -> np.ndarray:
    n = max(weights.shape)
    out = np.zeros((n, n), dtype=np.int64)
    out[: weights.shape[0], : weights.shape[1]] = weights
    return out


def _fill_deficits(row_deficit: np.ndarray, col_deficit: np.ndarray) -> np.ndarray:
    # lowest-indexed deficient row against lowest-indexed deficient column
    n = row_deficit.size
    rd = row_deficit.astype(np.int64)
    cd = col_deficit.astype(np.int64)
    if rd.sum() != cd.sum() or (rd < 0).any() or (cd < 0).any():
        raise ValueError("row and column deficits must be nonnegative with equal totals")
    fill = np.zeros((n, n), dtype=np.int64)
    i = j = 0
    while i < n and j < n:
        if rd[i] == 0:
            i += 1
        elif cd[j] == 0:
            j += 1
        else:
            t = min(rd[i], cd[j])
            fill[i, j] += t
            rd[i] -= t
            cd[j] -= t
    return fill


@dataclass(frozen=True, eq=False)
class DegreeMatrix:
    """``target``-regular bipartite multigraph: ``mult[i, j]`` parallel edges.

    ``real`` is the padded weight matrix it was built from.
    """
    mult: np.ndarray
    target: int
    real: np.ndarray


@dataclass(frozen=True, eq=False)
class SaturatedMatrix:
    real: np.ndarray
    slack: np.ndarray
    target_load: int


def regularize(inst: Instance) -> DegreeMatrix:
    """Pad to square and add zero-weight filler edges until every node has
    degree ``delta``.  Real edges keep multiplicity at least 1."""
    real = pad_square(inst.weights)
    delta = stats(inst).delta
    if delta < 1:
        raise ValueError("instance has no edges")
    base = (real > 0).astype(np.int64)
    mult = base + _fill_deficits(delta - base.sum(axis=1), delta - base.sum(axis=0))
    return DegreeMatrix(mult, delta, real)


def saturate_loads(inst: Instance) -> SaturatedMatrix:
    """Pad to square and add slack until every row and column of
    ``real + slack`` sums to ``W``."""
    real = pad_square(inst.weights)
    w_load = stats(inst).w_load
    if w_load < 1:
        raise ValueError("instance has no edges")
    slack = _fill_deficits(w_load - real.sum(axis=1), w_load - real.sum(axis=0))
    return SaturatedMatrix(real, slack, w_load)
