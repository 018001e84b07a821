"""Pure-Python (numpy) fallback for the brute-force coloring kernel.

Colorings are enumerated in blocks: each block is an integer range decoded
into base-``k`` digit rows (vertex 0 most significant) and every rule is
evaluated column-wise on the whole block.
"""

from __future__ import annotations

import numpy as np

SIGMA, PI, PROPER = 0, 1, 2
ROOT, ANCHOR = 1, 2

BLOCK = 1 << 16


def _child_rules(F: np.ndarray, v: int, left: int, right: int) -> np.ndarray:
    """Rows where the right/left child rules fail at ``v``."""
    c = F[:, v]
    if right >= 0:
        bad = (c == 1) & (F[:, right] < 1)
    else:
        bad = c == 1
    if left >= 0:
        bad |= (c >= 2) & (F[:, left] != c - 1)
    else:
        bad |= c >= 2
    return bad


def _failing(family, F, v, level, left, right, nbr, flags):
    c = F[:, v]
    rows = F.shape[0]
    bad = np.zeros(rows, dtype=bool)
    if family == SIGMA:
        if flags[v] & ROOT:
            bad |= c < 1
        if level == 2:
            bad |= _child_rules(F, v, left[v], right[v])
    elif family == PI:
        if flags[v] & ANCHOR:
            count = np.zeros(rows, dtype=np.int64)
            for u in nbr[v]:
                if u >= 0:
                    count += F[:, u] >= 1
            bad |= count != 1
        elif level == 2:
            bad |= _child_rules(F, v, left[v], right[v])
    elif family == PROPER:
        if level == 2:
            for u in nbr[v]:
                if u >= 0:
                    bad |= F[:, u] == c
    else:
        raise ValueError(f"unknown rule family {family}")
    return bad


def first_solution(family, k, left, right, nbr, flags, levels, limit=None):
    n = len(levels)
    total = k**n
    if limit is not None:
        total = min(total, limit)
    active = [v for v in range(n) if levels[v] > 0]
    powers = [k ** (n - 1 - j) for j in range(n)]
    for start in range(0, total, BLOCK):
        idx = np.arange(start, min(total, start + BLOCK), dtype=np.int64)
        F = np.empty((idx.size, n), dtype=np.int64)
        for j in range(n):
            F[:, j] = (idx // powers[j]) % k
        ok = np.ones(idx.size, dtype=bool)
        for v in active:
            ok &= ~_failing(family, F, v, levels[v], left, right, nbr, flags)
        hits = np.flatnonzero(ok)
        if hits.size:
            h = int(hits[0])
            return F[h].astype(np.int32), start + h + 1
    return None, total
