"""The two official measures.

Span identification is scored with partial-overlap credit. With S the
merged predicted spans and T the merged gold spans over all documents,

    P = (1/|S|) sum over documents, pairs (s, t) of |s n t| / den_p
    R = (1/|T|) sum over documents, pairs (s, t) of |s n t| / den_r
    F1 = 2PR / (P + R)

Under the default `corrected` convention den_p = |s| (predicted length)
and den_r = |t| (gold length), which keeps both values in [0, 1] after
merging. The `literal-paper` convention exchanges the two denominators;
it is kept for comparison and can exceed 1 on overlapping gold.

Technique classification is micro-averaged F1 where predictions sharing
one exact (doc, span) key are resolved against the gold labels on that
key by best match, so record order never matters.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .annotations import AnnotationSet, validate
from .corpus import Corpus
from .errors import InvalidInputError, MissingPredictionError
from .parallel import pmap
from .spans import Span, spans_to_arrays
from .techniques import TECHNIQUES

CONVENTIONS = ("corrected", "literal-paper")


@dataclass(slots=True)
class DocSiTerms:
    """One document's additive share of the global sums."""

    precision_sum: float
    recall_sum: float
    pred_spans: int
    gold_spans: int


@dataclass(slots=True)
class SiScore:
    precision: float
    recall: float
    f1: float
    convention: str
    per_document: dict[int, DocSiTerms] | None = None

    def to_json(self) -> dict:
        out = {
            "precision": round(self.precision, 5),
            "recall": round(self.recall, 5),
            "f1": round(self.f1, 5),
            "convention": self.convention,
        }
        if self.per_document is not None:
            out["per_document"] = {
                str(doc_id): {
                    "precision_sum": t.precision_sum,
                    "recall_sum": t.recall_sum,
                    "pred_spans": t.pred_spans,
                    "gold_spans": t.gold_spans,
                }
                for doc_id, t in sorted(self.per_document.items())
            }
        return out

    def to_text(self) -> str:
        return (
            f"F1={self.f1:.5f}\n"
            f"P={self.precision:.5f} R={self.recall:.5f}"
        )


@dataclass(slots=True)
class ClassCounts:
    tp: int
    fp: int
    fn: int

    @property
    def f1(self) -> float:
        den = 2 * self.tp + self.fp + self.fn
        return 2 * self.tp / den if den else 0.0


@dataclass(slots=True)
class TcScore:
    micro_f1: float
    matched: int
    total: int
    per_class: dict[str, ClassCounts] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "micro_f1": round(self.micro_f1, 5),
            "matched": self.matched,
            "total": self.total,
            "per_class": {
                name: {"tp": c.tp, "fp": c.fp, "fn": c.fn, "f1": round(c.f1, 5)}
                for name, c in self.per_class.items()
            },
        }

    def to_text(self) -> str:
        return f"F1={self.micro_f1:.5f}\nP={self.micro_f1:.5f} R={self.micro_f1:.5f}"


def _merged_arrays(spans: list[Span]) -> tuple[np.ndarray, np.ndarray]:
    starts, ends = spans_to_arrays(spans)
    if starts.shape[0] <= 1:
        return starts, ends
    return kernels.merge_sorted_intervals(starts, ends)


def _require_valid(corpus: Corpus, ann: AnnotationSet, label: str) -> None:
    report = validate(corpus, ann)
    if not report.ok:
        first = report.errors[0]
        raise InvalidInputError(
            f"{label} annotations failed validation "
            f"({len(report.errors)} errors; first: line {first.line}: {first.message})",
            report=report,
        )


def score_si(
    gold: AnnotationSet,
    pred: AnnotationSet,
    corpus: Corpus,
    convention: str = "corrected",
    per_document: bool = False,
) -> SiScore:
    """Score predicted spans against gold with partial-overlap credit.

    Both sets are merged per document first. |S| and |T| are the global
    post-merge span counts; an empty side forces its ratio to 0, and F1
    is 0 when P + R = 0.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    _require_valid(corpus, gold, "gold")
    _require_valid(corpus, pred, "predicted")

    gold_by_doc = gold.spans_by_doc()
    pred_by_doc = pred.spans_by_doc()
    doc_ids = sorted(set(gold_by_doc) | set(pred_by_doc))

    def one_doc(doc_id: int) -> DocSiTerms:
        ps, pe = _merged_arrays(pred_by_doc.get(doc_id, []))
        gs, ge = _merged_arrays(gold_by_doc.get(doc_id, []))
        if ps.shape[0] and gs.shape[0]:
            over_pred, over_gold = kernels.pair_overlap_sums(ps, pe, gs, ge)
        else:
            over_pred, over_gold = 0.0, 0.0
        if convention == "corrected":
            p_sum, r_sum = over_pred, over_gold
        else:
            p_sum, r_sum = over_gold, over_pred
        return DocSiTerms(
            precision_sum=p_sum,
            recall_sum=r_sum,
            pred_spans=int(ps.shape[0]),
            gold_spans=int(gs.shape[0]),
        )

    terms = list(pmap(one_doc, doc_ids))
    total_pred = sum(t.pred_spans for t in terms)
    total_gold = sum(t.gold_spans for t in terms)
    p_sum = sum(t.precision_sum for t in terms)
    r_sum = sum(t.recall_sum for t in terms)

    precision = p_sum / total_pred if total_pred else 0.0
    recall = r_sum / total_gold if total_gold else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return SiScore(
        precision=precision,
        recall=recall,
        f1=f1,
        convention=convention,
        per_document=dict(zip(doc_ids, terms)) if per_document else None,
    )


def resolve_identical_spans(
    gold_labels: list[str], pred_labels: list[str]
) -> int:
    """Best-match agreement count for one shared (doc, span) key.

    Equals the maximum number of label agreements over all pairings,
    which for label multisets is just the multiset intersection size.
    """
    if len(gold_labels) != len(pred_labels):
        raise MissingPredictionError(
            f"{len(gold_labels)} gold labels vs {len(pred_labels)} predictions "
            "on one identical span"
        )
    gold_counts = Counter(gold_labels)
    pred_counts = Counter(pred_labels)
    return sum(min(n, pred_counts[label]) for label, n in gold_counts.items())


def score_tc(gold: AnnotationSet, pred: AnnotationSet) -> TcScore:
    """Micro-F1 over technique labels with best-match span resolution.

    Every gold (doc, span) occurrence must have exactly one prediction;
    a key-multiset mismatch raises MissingPredictionError naming the
    offending keys. With that precondition micro-F1 equals accuracy.
    """
    if gold.mode != "TC" or pred.mode != "TC":
        raise ValueError("score_tc needs TC-mode gold and predictions")

    gold_groups: dict[tuple[int, int, int], list[str]] = {}
    for rec in gold:
        gold_groups.setdefault(rec.key, []).append(rec.technique)
    pred_groups: dict[tuple[int, int, int], list[str]] = {}
    for rec in pred:
        pred_groups.setdefault(rec.key, []).append(rec.technique)

    bad = sorted(
        key
        for key in set(gold_groups) | set(pred_groups)
        if len(gold_groups.get(key, ())) != len(pred_groups.get(key, ()))
    )
    if bad:
        shown = ", ".join(f"doc {d} ({s}, {e})" for d, s, e in bad[:10])
        more = f" and {len(bad) - 10} more" if len(bad) > 10 else ""
        raise MissingPredictionError(
            f"prediction keys do not cover gold keys: {shown}{more}", keys=tuple(bad)
        )

    matched = 0
    tp: Counter = Counter()
    fp: Counter = Counter()
    fn: Counter = Counter()
    for key, gold_labels in gold_groups.items():
        pred_labels = pred_groups[key]
        gc = Counter(gold_labels)
        pc = Counter(pred_labels)
        for label in gc | pc:
            hit = min(gc[label], pc[label])
            matched += hit
            tp[label] += hit
            fp[label] += pc[label] - hit
            fn[label] += gc[label] - hit

    total = len(gold)
    per_class = {
        name: ClassCounts(tp=tp[name], fp=fp[name], fn=fn[name]) for name in TECHNIQUES
    }
    return TcScore(
        micro_f1=matched / total if total else 0.0,
        matched=matched,
        total=total,
        per_class=per_class,
    )
