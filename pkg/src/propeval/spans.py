"""Half-open character spans and the overlap-merging rule shared by every
scoring and combination path.

Offsets index Unicode scalar values, never bytes. A span covers the
character set {start, ..., end-1}; two spans overlap only when those sets
intersect, so touching spans (end == next start) are distinct.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels


@dataclass(frozen=True, slots=True, order=True)
class Span:
    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0:
            raise ValueError(f"span start must be >= 0, got {self.start}")
        if self.end <= self.start:
            raise ValueError(f"span end must be > start, got ({self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end

    def intersection_size(self, other: "Span") -> int:
        lo = max(self.start, other.start)
        hi = min(self.end, other.end)
        return hi - lo if hi > lo else 0


def spans_to_arrays(spans: Iterable[Span]) -> tuple[np.ndarray, np.ndarray]:
    ordered = sorted(spans)
    starts = np.fromiter((s.start for s in ordered), dtype=np.int64)
    ends = np.fromiter((s.end for s in ordered), dtype=np.int64)
    return starts, ends


def arrays_to_spans(starts: np.ndarray, ends: np.ndarray) -> list[Span]:
    return [Span(int(s), int(e)) for s, e in zip(starts, ends)]


def merge_spans(spans: Sequence[Span] | Iterable[Span]) -> list[Span]:
    """Replace all mutually overlapping spans by their union.

    Returns the unique minimal set of pairwise-disjoint spans covering
    exactly the union of the input character sets, sorted by start. The
    result does not depend on input order. Touching spans are not merged.
    """
    starts, ends = spans_to_arrays(spans)
    if starts.shape[0] <= 1:
        return arrays_to_spans(starts, ends)
    return arrays_to_spans(*kernels.merge_sorted_intervals(starts, ends))


def total_length(spans: Iterable[Span]) -> int:
    return sum(len(s) for s in spans)
