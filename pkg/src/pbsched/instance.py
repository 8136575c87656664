"""PBS instances: a nonnegative integer weight matrix plus a setup cost.

Rows are sources, columns are destinations, and ``weights[i, j]`` is the
transmission time of the message from source ``i`` to destination ``j``
(0 means there is no message).  Read as a machines-by-jobs table the same
matrix is the processing-time matrix of an open shop instance, so no
separate conversion is needed.

Text format (canonical, produced by :func:`serialize`)::

    n m d
    w11 w12 ... w1m
    ...
    wn1 wn2 ... wnm

Random instances come from numpy's PCG64 generator seeded through
``numpy.random.SeedSequence``; both are specified bit for bit by numpy and
independent of platform.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

Seed = Union[int, Sequence[int]]


class ParseError(ValueError):
    """Malformed instance or schedule text."""

    def __init__(self, lineno: int, reason: str):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno
        self.reason = reason


@dataclass(frozen=True, eq=False)
class Instance:
    weights: np.ndarray
    setup: int

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.int64, copy=True)
        if w.ndim != 2 or w.shape[0] < 1 or w.shape[1] < 1:
            raise ValueError(f"weights must be a nonempty 2-d matrix, got shape {w.shape}")
        if (w < 0).any():
            raise ValueError("weights must be nonnegative")
        if int(self.setup) != self.setup or self.setup < 0:
            raise ValueError(f"setup must be a nonnegative integer, got {self.setup!r}")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "setup", int(self.setup))

    @property
    def n_sources(self) -> int:
        return self.weights.shape[0]

    @property
    def n_dests(self) -> int:
        return self.weights.shape[1]

    @property
    def edges(self) -> list[tuple[int, int]]:
        """Real edges in row-major order."""
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self.weights))]

    def with_setup(self, setup: int) -> "Instance":
        return Instance(self.weights, setup)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return self.setup == other.setup and np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash((self.weights.shape, self.weights.tobytes(), self.setup))

    def __repr__(self):
        return f"Instance(weights={self.weights.tolist()}, setup={self.setup})"


@dataclass(frozen=True)
class InstanceStats:
    delta: int
    w_load: int
    lower_bound: int


def stats(inst: Instance) -> InstanceStats:
    """Maximum degree, maximum load and the lower bound ``W + d * delta``."""
    w = inst.weights
    present = w > 0
    delta = int(max(present.sum(axis=0).max(), present.sum(axis=1).max()))
    w_load = int(max(w.sum(axis=0).max(), w.sum(axis=1).max()))
    return InstanceStats(delta, w_load, w_load + inst.setup * delta)


def generate_uniform(n: int, m: int, w_max: int, density: float = 1.0,
                     setup: int = 0, seed: Seed = 0) -> Instance:
    """Random instance: each cell present with probability ``density``,
    present cells uniform on ``1..w_max``."""
    if w_max < 1:
        raise ValueError(f"w_max must be >= 1, got {w_max}")
    if not 0.0 < density <= 1.0:
        raise ValueError(f"density must lie in (0, 1], got {density}")
    if n < 1 or m < 1:
        raise ValueError(f"dimensions must be positive, got {n}x{m}")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    present = rng.random((n, m)) < density
    values = rng.integers(1, w_max, size=(n, m), endpoint=True, dtype=np.int64)
    return Instance(np.where(present, values, 0), setup)


def serialize(inst: Instance) -> bytes:
    lines = [f"{inst.n_sources} {inst.n_dests} {inst.setup}"]
    lines.extend(" ".join(map(str, row)) for row in inst.weights.tolist())
    return ("\n".join(lines) + "\n").encode("ascii")


def _ints(line: str, lineno: int) -> list[int]:
    try:
        values = [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(lineno, f"non-integer token in {line.strip()!r}") from None
    if any(v < 0 for v in values):
        raise ParseError(lineno, "negative number")
    return values


def parse(text: bytes | str) -> Instance:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError(1, "missing header 'n m d'")
    header = _ints(lines[0], 1)
    if len(header) != 3:
        raise ParseError(1, f"header needs 3 integers 'n m d', got {len(header)}")
    n, m, d = header
    if n < 1 or m < 1:
        raise ParseError(1, "dimensions must be positive")
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != n:
        raise ParseError(len(lines) + 1 if len(body) < n else n + 2,
                         f"expected {n} weight rows, found {len(body)}")
    rows = []
    for k, line in enumerate(body, start=2):
        row = _ints(line, k)
        if len(row) != m:
            raise ParseError(k, f"expected {m} cells, found {len(row)}")
        rows.append(row)
    return Instance(np.array(rows, dtype=np.int64), d)
