"""Vectorised numpy twins of the compiled kernels in ``_kernels_numba``.

Same signatures, same results bit for bit; used when numba is missing or
``PBS_SCHED_BACKEND=numpy``.
"""
import numpy as np

INF = np.int64(1) << np.int64(62)


def _hungarian(cost, mask):
    n = cost.shape[0]
    u = np.zeros(n + 1, np.int64)
    v = np.zeros(n + 1, np.int64)
    p = np.zeros(n + 1, np.int64)
    way = np.zeros(n + 1, np.int64)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, INF, np.int64)
        used = np.zeros(n + 1, np.bool_)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used[1:]
            cur = cost[i0 - 1] - u[i0] - v[1:]
            better = free & mask[i0 - 1] & (cur < minv[1:])
            minv[1:][better] = cur[better]
            way[1:][better] = j0
            cand = np.where(free, minv[1:], INF)
            j1 = int(np.argmin(cand)) + 1
            delta = cand[j1 - 1]
            if delta >= INF:
                return None
            u[p[used]] += delta
            v[used] -= delta
            live = ~used & (minv < INF)
            minv[live] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    col_of_row = np.empty(n, np.int64)
    col_of_row[p[1:] - 1] = np.arange(n)
    return col_of_row, u[1:], v[1:]


def _lex_smallest(tight, col_of_row):
    n = tight.shape[0]
    row_of_col = np.empty(n, np.int64)
    row_of_col[col_of_row] = np.arange(n)
    fixed_col = np.zeros(n, np.bool_)
    for i in range(n):
        a = col_of_row[i]
        cands = np.flatnonzero(tight[i, :a] & ~fixed_col[:a])
        if cands.size:
            row_seen = np.zeros(n, np.bool_)
            row_seen[: i + 1] = True
            col_seen = np.zeros(n, np.bool_)
            col_seen[a] = True
            nxt = np.empty(n, np.int64)
            queue = [a]
            while queue:
                x = queue.pop(0)
                hits = np.flatnonzero(~row_seen & tight[:, x] & (col_of_row != x))
                row_seen[hits] = True
                nxt[hits] = x
                for y in col_of_row[hits]:
                    if not col_seen[y]:
                        col_seen[y] = True
                        queue.append(int(y))
            row_seen[: i + 1] = False
            ok = row_seen[row_of_col[cands]]
            if ok.any():
                c = cands[np.argmax(ok)]
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
        fixed_col[col_of_row[i]] = True


def _assign(weights, mask):
    cost = -weights
    found = _hungarian(cost, mask)
    if found is None:
        return None
    cols, u, v = found
    tight = mask & (cost - u[:, None] - v[None, :] == 0)
    _lex_smallest(tight, cols)
    return cols


def lexmax_assignment(weights, mask):
    cols = _assign(weights, mask)
    if cols is None:
        return False, np.empty(weights.shape[0], np.int64)
    return True, cols


def posa_rounds(real, slack, padded_objective):
    n = real.shape[0]
    real = real.copy()
    slack = slack.copy()
    rows = np.arange(n)
    assign, dur = [], []
    remaining = int(real.sum() + slack.sum())
    while remaining > 0:
        total = real + slack
        cols = _assign(total if padded_objective else real, total > 0)
        if cols is None:
            return False, _stack(assign, n), np.array(dur, np.int64)
        delta = total[rows, cols].min()
        r = real[rows, cols]
        take = np.minimum(delta, r)
        real[rows, cols] = r - take
        slack[rows, cols] -= delta - take
        assign.append(np.where(r > 0, cols, -1))
        dur.append(delta)
        remaining -= n * int(delta)
    return True, _stack(assign, n), np.array(dur, np.int64)


def os01pt_rounds(real, mult, n_rounds):
    n = real.shape[0]
    real = real.copy()
    mult = mult.copy()
    rows = np.arange(n)
    assign = np.full((n_rounds, n), -1, np.int64)
    dur = np.zeros(n_rounds, np.int64)
    for k in range(n_rounds):
        cols = _assign(real, mult > 0)
        if cols is None:
            return False, assign, dur
        mult[rows, cols] -= 1
        r = real[rows, cols]
        assign[k] = np.where(r > 0, cols, -1)
        dur[k] = r.max(initial=0)
        real[rows, cols] = 0
    return True, assign, dur


def _stack(assign, n):
    if not assign:
        return np.empty((0, n), np.int64)
    return np.array(assign, np.int64)
