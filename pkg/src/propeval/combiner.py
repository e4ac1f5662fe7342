"""System combination: character-level voting for SI, per-record majority
voting for TC, and top-k sweep curves over a ranked system list.

A character counts as flagged by a system if any of that system's merged
spans covers it, so duplicate overlapping predictions count once. Union
keeps characters with at least one vote, intersection demands all votes,
and majority is strict: more than half, so 2 of 4 systems is not enough.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from io import StringIO
import csv

import numpy as np

from . import kernels
from .annotations import Annotation, AnnotationSet, validate
from .corpus import Corpus
from .errors import EmptyEnsembleError, InvalidInputError, MisalignedEnsembleError
from .parallel import pmap
from .scoring import score_si, score_tc
from .spans import Span, spans_to_arrays
from .techniques import TECHNIQUE_INDEX, TECHNIQUES

METHODS = ("union", "intersection", "majority")


def _vote_threshold(method: str, n_systems: int) -> int:
    if method == "union":
        return 1
    if method == "intersection":
        return n_systems
    if method == "majority":
        return n_systems // 2 + 1
    raise ValueError(f"method must be one of {METHODS}, got {method!r}")


def combine_si(
    systems: list[AnnotationSet], method: str, corpus: Corpus
) -> AnnotationSet:
    """Combine SI predictions character by character under a vote rule."""
    if not systems:
        raise EmptyEnsembleError("combine_si needs at least one system")
    threshold = _vote_threshold(method, len(systems))
    for i, system in enumerate(systems):
        report = validate(corpus, system)
        if not report.ok:
            first = report.errors[0]
            raise InvalidInputError(
                f"system {i + 1} failed validation (line {first.line}: {first.message})",
                report=report,
            )

    spans_by_doc = [s.spans_by_doc() for s in systems]
    doc_ids = sorted(set().union(*(set(d) for d in spans_by_doc)))

    def one_doc(doc_id: int) -> list[Span]:
        length = corpus[doc_id].length
        counts = np.zeros(length, dtype=np.int64)
        for per_doc in spans_by_doc:
            spans = per_doc.get(doc_id)
            if not spans:
                continue
            starts, ends = spans_to_arrays(spans)
            starts, ends = kernels.merge_sorted_intervals(starts, ends)
            counts += kernels.vote_counts(length, starts, ends)
        run_starts, run_ends = kernels.runs_at_least(counts, threshold)
        return [Span(int(s), int(e)) for s, e in zip(run_starts, run_ends)]

    out = AnnotationSet(mode="SI")
    for doc_id, spans in zip(doc_ids, pmap(one_doc, doc_ids)):
        for span in spans:
            out.append(Annotation(doc_id, span))
    return out


@dataclass(slots=True)
class ClassPrior:
    counts: dict[str, int]

    def __post_init__(self) -> None:
        for name, c in self.counts.items():
            if name not in TECHNIQUE_INDEX:
                raise ValueError(f"unknown technique in prior: {name!r}")
            if c < 0:
                raise ValueError(f"negative prior count for {name}")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def usable(self) -> bool:
        return self.total > 0

    def count(self, label: str) -> int:
        return self.counts.get(label, 0)


def class_prior(train: AnnotationSet) -> ClassPrior:
    """Exact training-set label counts, zeros included for absent classes."""
    if train.mode != "TC":
        raise ValueError("class_prior needs TC-mode annotations")
    counts = {name: 0 for name in TECHNIQUES}
    for rec in train:
        counts[rec.technique] += 1
    return ClassPrior(counts=counts)


def combine_tc(systems: list[AnnotationSet], prior: ClassPrior) -> AnnotationSet:
    """Majority-vote technique labels record by record.

    Systems must agree on the (doc, span) key multiset; the i-th record
    on a key in one system is aligned with the i-th on that key in every
    other. Vote ties go to the higher training-set frequency, then to
    canonical class order. Output order follows the first system.
    """
    if not systems:
        raise EmptyEnsembleError("combine_tc needs at least one system")
    for i, system in enumerate(systems):
        if system.mode != "TC":
            raise ValueError(f"system {i + 1} is not TC-mode")

    base_keys = Counter(rec.key for rec in systems[0])
    for i, system in enumerate(systems[1:], start=2):
        keys = Counter(rec.key for rec in system)
        if keys != base_keys:
            bad = sorted(
                key
                for key in set(keys) | set(base_keys)
                if keys[key] != base_keys[key]
            )
            shown = ", ".join(f"doc {d} ({s}, {e})" for d, s, e in bad[:10])
            raise MisalignedEnsembleError(
                f"system {i} disagrees with system 1 on keys: {shown}"
            )

    labels_by_key: list[dict[tuple[int, int, int], list[str]]] = []
    for system in systems:
        d: dict[tuple[int, int, int], list[str]] = {}
        for rec in system:
            d.setdefault(rec.key, []).append(rec.technique)
        labels_by_key.append(d)

    out = AnnotationSet(mode="TC")
    occurrence: Counter = Counter()
    for rec in systems[0]:
        i = occurrence[rec.key]
        occurrence[rec.key] += 1
        votes = Counter(d[rec.key][i] for d in labels_by_key)
        top = max(votes.values())
        winner = min(
            (lab for lab, v in votes.items() if v == top),
            key=lambda lab: (-prior.count(lab), TECHNIQUE_INDEX[lab]),
        )
        out.append(Annotation(rec.doc_id, rec.span, winner))
    return out


@dataclass(slots=True)
class SiSweepRow:
    k: int
    method: str
    precision: float
    recall: float
    f1: float
    flagged_chars: int


@dataclass(slots=True)
class TcSweepRow:
    k: int
    micro_f1: float
    per_class_f1: tuple[float, ...]


@dataclass(slots=True)
class SweepCurve:
    task: str  # "si" or "tc"
    rows: list = field(default_factory=list)

    def to_csv(self) -> str:
        buf = StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if self.task == "si":
            writer.writerow(["k", "method", "precision", "recall", "f1", "flagged_chars"])
            for row in self.rows:
                writer.writerow(
                    [
                        row.k,
                        row.method,
                        f"{row.precision:.5f}",
                        f"{row.recall:.5f}",
                        f"{row.f1:.5f}",
                        row.flagged_chars,
                    ]
                )
        else:
            writer.writerow(["k", "micro_f1", *TECHNIQUES])
            for row in self.rows:
                writer.writerow(
                    [row.k, f"{row.micro_f1:.5f}", *(f"{v:.5f}" for v in row.per_class_f1)]
                )
        return buf.getvalue()

    def _series(self) -> list[tuple[str, list[tuple[int, float]]]]:
        if self.task == "si":
            named: dict[str, list[tuple[int, float]]] = {}
            for row in self.rows:
                named.setdefault(row.method, []).append((row.k, row.f1))
            return list(named.items())
        return [("micro_f1", [(row.k, row.micro_f1) for row in self.rows])]

    def to_svg(self) -> str:
        """Fixed-layout line chart of the F1 columns, same data as the CSV."""
        width, height = 720, 440
        left, right, top, bottom = 56, 170, 24, 48
        plot_w = width - left - right
        plot_h = height - top - bottom
        palette = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")
        series = self._series()
        ks = sorted({k for _, pts in series for k, _ in pts})
        k_lo, k_hi = ks[0], ks[-1]
        span = max(k_hi - k_lo, 1)

        def sx(k: int) -> float:
            return left + (k - k_lo) / span * plot_w

        def sy(v: float) -> float:
            return top + (1.0 - v) * plot_h

        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect width="{width}" height="{height}" fill="white"/>',
            f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" '
            'stroke="black"/>',
            f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" '
            f'y2="{top + plot_h}" stroke="black"/>',
        ]
        for i in range(5):
            v = i / 4
            y = sy(v)
            parts.append(
                f'<line x1="{left - 4}" y1="{y:.2f}" x2="{left + plot_w}" '
                f'y2="{y:.2f}" stroke="#dddddd"/>'
            )
            parts.append(
                f'<text x="{left - 8}" y="{y + 4:.2f}" font-size="11" '
                f'text-anchor="end" font-family="sans-serif">{v:.2f}</text>'
            )
        for k in ks:
            x = sx(k)
            parts.append(
                f'<text x="{x:.2f}" y="{top + plot_h + 16}" font-size="11" '
                f'text-anchor="middle" font-family="sans-serif">{k}</text>'
            )
        parts.append(
            f'<text x="{left + plot_w / 2:.2f}" y="{height - 12}" font-size="12" '
            'text-anchor="middle" font-family="sans-serif">k (top systems combined)</text>'
        )
        for idx, (name, pts) in enumerate(series):
            color = palette[idx % len(palette)]
            coords = " ".join(f"{sx(k):.2f},{sy(v):.2f}" for k, v in pts)
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" '
                'stroke-width="2"/>'
            )
            for k, v in pts:
                parts.append(
                    f'<circle cx="{sx(k):.2f}" cy="{sy(v):.2f}" r="3" fill="{color}"/>'
                )
            ly = top + 16 + idx * 18
            parts.append(
                f'<line x1="{left + plot_w + 12}" y1="{ly - 4}" '
                f'x2="{left + plot_w + 34}" y2="{ly - 4}" stroke="{color}" '
                'stroke-width="2"/>'
            )
            parts.append(
                f'<text x="{left + plot_w + 40}" y="{ly}" font-size="11" '
                f'font-family="sans-serif">{name}</text>'
            )
        parts.append("</svg>")
        return "\n".join(parts) + "\n"


def sweep_topk(
    systems: list[AnnotationSet],
    gold: AnnotationSet,
    corpus: Corpus | None = None,
    methods: tuple[str, ...] = METHODS,
    k_max: int | None = None,
    convention: str = "corrected",
    prior: ClassPrior | None = None,
) -> SweepCurve:
    """Combine the top k systems for k = 1..k_max and score each result.

    `systems` must already be ranked best first. SI sweeps need the
    corpus and emit one row per (k, method); TC sweeps need the prior
    and always vote by majority.
    """
    if not systems:
        raise EmptyEnsembleError("sweep_topk needs at least one system")
    if k_max is None:
        k_max = len(systems)
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if k_max > len(systems):
        warnings.warn(
            f"k_max {k_max} exceeds the {len(systems)} available systems; truncating",
            stacklevel=2,
        )
        k_max = len(systems)

    curve = SweepCurve(task="si" if gold.mode == "SI" else "tc")
    if gold.mode == "SI":
        if corpus is None:
            raise ValueError("SI sweeps need the corpus")
        for method in methods:
            if method not in METHODS:
                raise ValueError(f"method must be one of {METHODS}, got {method!r}")
        for k in range(1, k_max + 1):
            for method in methods:
                combined = combine_si(systems[:k], method, corpus)
                score = score_si(gold, combined, corpus, convention=convention)
                flagged = sum(len(rec.span) for rec in combined)
                curve.rows.append(
                    SiSweepRow(
                        k=k,
                        method=method,
                        precision=score.precision,
                        recall=score.recall,
                        f1=score.f1,
                        flagged_chars=flagged,
                    )
                )
    else:
        if prior is None:
            raise ValueError("TC sweeps need a class prior for tie-breaking")
        for k in range(1, k_max + 1):
            combined = combine_tc(systems[:k], prior)
            score = score_tc(gold, combined)
            curve.rows.append(
                TcSweepRow(
                    k=k,
                    micro_f1=score.micro_f1,
                    per_class_f1=tuple(
                        score.per_class[name].f1 for name in TECHNIQUES
                    ),
                )
            )
    return curve
