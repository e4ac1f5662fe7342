"""Numba @njit twins of the kernels in _kernels_np.py.

Imported lazily by propeval.kernels so that `import propeval` stays cheap
and machines without numba fall back to numpy transparently.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def merge_sorted_intervals(starts, ends):
    n = starts.shape[0]
    out_starts = np.empty(n, dtype=np.int64)
    out_ends = np.empty(n, dtype=np.int64)
    if n == 0:
        return out_starts, out_ends
    m = 0
    cur_start = starts[0]
    cur_end = ends[0]
    for i in range(1, n):
        if starts[i] < cur_end:
            if ends[i] > cur_end:
                cur_end = ends[i]
        else:
            # starts[i] >= cur_end: no shared character, close the run
            out_starts[m] = cur_start
            out_ends[m] = cur_end
            m += 1
            cur_start = starts[i]
            cur_end = ends[i]
    out_starts[m] = cur_start
    out_ends[m] = cur_end
    m += 1
    return out_starts[:m].copy(), out_ends[:m].copy()


@njit(cache=True)
def pair_overlap_sums(pred_starts, pred_ends, gold_starts, gold_ends):
    by_pred = 0.0
    by_gold = 0.0
    for i in range(pred_starts.shape[0]):
        ps = pred_starts[i]
        pe = pred_ends[i]
        plen = float(pe - ps)
        for j in range(gold_starts.shape[0]):
            lo = ps if ps > gold_starts[j] else gold_starts[j]
            hi = pe if pe < gold_ends[j] else gold_ends[j]
            if hi > lo:
                inter = float(hi - lo)
                by_pred += inter / plen
                by_gold += inter / float(gold_ends[j] - gold_starts[j])
    return by_pred, by_gold


@njit(cache=True)
def vote_counts(length, starts, ends):
    counts = np.zeros(length, dtype=np.int64)
    for i in range(starts.shape[0]):
        s = starts[i]
        e = ends[i]
        if s > length:
            s = length
        if e > length:
            e = length
        for c in range(s, e):
            counts[c] += 1
    return counts


@njit(cache=True)
def runs_at_least(counts, threshold):
    n = counts.shape[0]
    starts = np.empty(n, dtype=np.int64)
    ends = np.empty(n, dtype=np.int64)
    m = 0
    inside = False
    for i in range(n):
        if counts[i] >= threshold:
            if not inside:
                starts[m] = i
                inside = True
        elif inside:
            ends[m] = i
            m += 1
            inside = False
    if inside:
        ends[m] = n
        m += 1
    return starts[:m].copy(), ends[:m].copy()
