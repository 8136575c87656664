"""Compiled inner loops: assignment, POSA extraction, OS01PT extraction.

All arrays are int64 (weights, multiplicities) or bool (masks).  Every
function here has a twin with the same signature in ``_kernels_numpy``.
"""
import numpy as np
from numba import njit

INF = np.int64(1) << np.int64(62)


@njit(cache=True)
def _hungarian(cost, mask, col_of_row, row_pot, col_pot):
    # Shortest augmenting path, 1-based internally.  Fills col_of_row and
    # the optimal dual potentials; returns False when no perfect matching.
    n = cost.shape[0]
    u = np.zeros(n + 1, np.int64)
    v = np.zeros(n + 1, np.int64)
    p = np.zeros(n + 1, np.int64)
    way = np.zeros(n + 1, np.int64)
    minv = np.empty(n + 1, np.int64)
    used = np.empty(n + 1, np.bool_)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv[:] = INF
        used[:] = False
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = INF
            j1 = -1
            for j in range(1, n + 1):
                if not used[j]:
                    if mask[i0 - 1, j - 1]:
                        cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                        if cur < minv[j]:
                            minv[j] = cur
                            way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            if j1 < 0:
                return False
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                elif minv[j] < INF:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    for j in range(1, n + 1):
        col_of_row[p[j] - 1] = j - 1
    for i in range(n):
        row_pot[i] = u[i + 1]
        col_pot[i] = v[i + 1]
    return True


@njit(cache=True)
def _lex_smallest(tight, col_of_row):
    # Rewrites col_of_row into the lexicographically smallest perfect
    # matching of the tight graph, fixing one row at a time.
    n = tight.shape[0]
    row_of_col = np.empty(n, np.int64)
    for i in range(n):
        row_of_col[col_of_row[i]] = i
    fixed_col = np.zeros(n, np.bool_)
    row_seen = np.empty(n, np.bool_)
    col_seen = np.empty(n, np.bool_)
    nxt = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    for i in range(n):
        a = col_of_row[i]
        first = -1
        for c in range(a):
            if tight[i, c] and not fixed_col[c]:
                first = c
                break
        if first >= 0:
            # rows that can hand their column over and still reach column a
            row_seen[:] = False
            col_seen[:] = False
            head = 0
            tail = 1
            queue[0] = a
            col_seen[a] = True
            while head < tail:
                x = queue[head]
                head += 1
                for r in range(i + 1, n):
                    if not row_seen[r] and tight[r, x] and col_of_row[r] != x:
                        row_seen[r] = True
                        nxt[r] = x
                        y = col_of_row[r]
                        if not col_seen[y]:
                            col_seen[y] = True
                            queue[tail] = y
                            tail += 1
            for c in range(first, a):
                if tight[i, c] and not fixed_col[c] and row_seen[row_of_col[c]]:
                    r = row_of_col[c]
                    col_of_row[i] = c
                    row_of_col[c] = i
                    while True:
                        x = nxt[r]
                        prev = row_of_col[x]
                        col_of_row[r] = x
                        row_of_col[x] = r
                        if x == a:
                            break
                        r = prev
                    break
        fixed_col[col_of_row[i]] = True


@njit(cache=True)
def _assign(weights, mask, col_of_row):
    n = weights.shape[0]
    cost = -weights
    row_pot = np.empty(n, np.int64)
    col_pot = np.empty(n, np.int64)
    if not _hungarian(cost, mask, col_of_row, row_pot, col_pot):
        return False
    tight = np.empty((n, n), np.bool_)
    for i in range(n):
        for j in range(n):
            tight[i, j] = mask[i, j] and cost[i, j] - row_pot[i] - col_pot[j] == 0
    _lex_smallest(tight, col_of_row)
    return True


@njit(cache=True)
def lexmax_assignment(weights, mask):
    """Max-weight perfect matching on ``mask``; ties go to the
    lexicographically smallest column vector.  Returns ``(ok, col_of_row)``."""
    col_of_row = np.empty(weights.shape[0], np.int64)
    ok = _assign(weights, mask, col_of_row)
    return ok, col_of_row


@njit(cache=True)
def posa_rounds(real, slack, padded_objective):
    n = real.shape[0]
    real = real.copy()
    slack = slack.copy()
    remaining = np.int64(0)
    for i in range(n):
        for j in range(n):
            remaining += real[i, j] + slack[i, j]
    cap = max(n * n, 1)
    assign = np.full((cap, n), -1, np.int64)
    dur = np.zeros(cap, np.int64)
    mask = np.empty((n, n), np.bool_)
    score = np.empty((n, n), np.int64)
    cols = np.empty(n, np.int64)
    k = 0
    while remaining > 0:
        for i in range(n):
            for j in range(n):
                t = real[i, j] + slack[i, j]
                mask[i, j] = t > 0
                score[i, j] = t if padded_objective else real[i, j]
        if not _assign(score, mask, cols):
            return False, assign[:k], dur[:k]
        delta = INF
        for i in range(n):
            t = real[i, cols[i]] + slack[i, cols[i]]
            if t < delta:
                delta = t
        for i in range(n):
            j = cols[i]
            r = real[i, j]
            if r > 0:
                assign[k, i] = j
                take = min(delta, r)
                real[i, j] = r - take
                slack[i, j] -= delta - take
            else:
                slack[i, j] -= delta
        dur[k] = delta
        remaining -= n * delta
        k += 1
    return True, assign[:k], dur[:k]


@njit(cache=True)
def os01pt_rounds(real, mult, n_rounds):
    n = real.shape[0]
    real = real.copy()
    mult = mult.copy()
    assign = np.full((n_rounds, n), -1, np.int64)
    dur = np.zeros(n_rounds, np.int64)
    mask = np.empty((n, n), np.bool_)
    cols = np.empty(n, np.int64)
    for k in range(n_rounds):
        for i in range(n):
            for j in range(n):
                mask[i, j] = mult[i, j] > 0
        if not _assign(real, mask, cols):
            return False, assign, dur
        longest = np.int64(0)
        for i in range(n):
            j = cols[i]
            mult[i, j] -= 1
            if real[i, j] > 0:
                assign[k, i] = j
                if real[i, j] > longest:
                    longest = real[i, j]
                real[i, j] = 0
        dur[k] = longest
    return True, assign, dur
