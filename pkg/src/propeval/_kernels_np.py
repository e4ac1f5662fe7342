"""Pure-numpy implementations of the hot kernels.

Reference backend: always importable, no JIT warm-up. The numba twins in
_kernels_nb.py must agree with these to within summation rounding (exactly,
for the integer kernels).
"""

from __future__ import annotations

import numpy as np


def merge_sorted_intervals(starts: np.ndarray, ends: np.ndarray):
    """Merge half-open intervals already sorted by (start, end).

    Only genuine overlap merges; touching intervals (end == next start)
    share no character and stay separate.
    """
    n = starts.shape[0]
    if n == 0:
        return starts.copy(), ends.copy()
    # new run starts wherever the start reaches the running max end
    # (equality means touching half-open intervals: no shared character)
    run_end = np.maximum.accumulate(ends)
    new_run = np.empty(n, dtype=np.bool_)
    new_run[0] = True
    new_run[1:] = starts[1:] >= run_end[:-1]
    idx = np.flatnonzero(new_run)
    out_starts = starts[idx]
    out_ends = np.maximum.reduceat(ends, idx)
    return out_starts.astype(np.int64), out_ends.astype(np.int64)


def pair_overlap_sums(
    pred_starts: np.ndarray,
    pred_ends: np.ndarray,
    gold_starts: np.ndarray,
    gold_ends: np.ndarray,
):
    """Sum |s∩t|/|s| and |s∩t|/|t| over all (pred, gold) span pairs.

    Returns (by_pred_len_sum, by_gold_len_sum).
    """
    if pred_starts.shape[0] == 0 or gold_starts.shape[0] == 0:
        return 0.0, 0.0
    inter = np.minimum(pred_ends[:, None], gold_ends[None, :]) - np.maximum(
        pred_starts[:, None], gold_starts[None, :]
    )
    np.clip(inter, 0, None, out=inter)
    inter = inter.astype(np.float64)
    pred_len = (pred_ends - pred_starts).astype(np.float64)
    gold_len = (gold_ends - gold_starts).astype(np.float64)
    by_pred = float((inter / pred_len[:, None]).sum())
    by_gold = float((inter / gold_len[None, :]).sum())
    return by_pred, by_gold


def vote_counts(length: int, starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
    """Per-character vote counts for spans clipped to [0, length)."""
    diff = np.zeros(length + 1, dtype=np.int64)
    if starts.shape[0]:
        np.add.at(diff, np.minimum(starts, length), 1)
        np.add.at(diff, np.minimum(ends, length), -1)
    return np.cumsum(diff[:length])


def runs_at_least(counts: np.ndarray, threshold: int):
    """Maximal runs of characters whose vote count is >= threshold."""
    mask = counts >= threshold
    padded = np.empty(mask.shape[0] + 2, dtype=np.int8)
    padded[0] = 0
    padded[-1] = 0
    padded[1:-1] = mask
    edges = np.flatnonzero(np.diff(padded))
    starts = edges[0::2].astype(np.int64)
    ends = edges[1::2].astype(np.int64)
    return starts, ends
