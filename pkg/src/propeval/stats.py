"""Corpus summary statistics: partition-level sizes, per-class counts,
merged snippet totals, and the identical-span multi-label rate."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .annotations import AnnotationSet
from .corpus import Corpus
from .errors import EmptyCorpusError
from .spans import merge_spans
from .techniques import TECHNIQUES


@dataclass(slots=True)
class ClassStats:
    count: int
    mean_length: float


@dataclass(slots=True)
class StatsReport:
    partition: str
    article_count: int
    char_length_mean: float
    char_length_std: float
    token_length_mean: float
    token_length_std: float
    snippet_count: int
    merged_snippet_count: int
    identical_span_rate: float
    per_class: dict[str, ClassStats] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "partition": self.partition,
            "article_count": self.article_count,
            "char_length_mean": self.char_length_mean,
            "char_length_std": self.char_length_std,
            "token_length_mean": self.token_length_mean,
            "token_length_std": self.token_length_std,
            "snippet_count": self.snippet_count,
            "merged_snippet_count": self.merged_snippet_count,
            "identical_span_rate": self.identical_span_rate,
            "per_class": {
                name: {"count": cs.count, "mean_length": cs.mean_length}
                for name, cs in self.per_class.items()
            },
        }


def _mean_std(values: list[int]) -> tuple[float, float]:
    # population standard deviation: these are whole-partition figures,
    # not a sample estimate
    n = len(values)
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / n
    return mean, math.sqrt(var)


def corpus_stats(corpus: Corpus, gold: AnnotationSet) -> StatsReport:
    """Summarize a corpus against its TC gold annotations.

    Token counts come from splitting on whitespace runs. The merged
    snippet count is what remains after per-document span merging, i.e.
    the matching SI gold size. A record contributes to the identical-span
    rate when some other record shares its exact (doc, span) key but
    carries a different technique.
    """
    if gold.mode != "TC":
        raise ValueError("corpus_stats needs TC-mode gold annotations")
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot summarize an empty corpus")

    char_lengths = [doc.length for doc in corpus]
    token_lengths = [len(doc.text.split()) for doc in corpus]
    char_mean, char_std = _mean_std(char_lengths)
    tok_mean, tok_std = _mean_std(token_lengths)

    per_class: dict[str, ClassStats] = {}
    for name in TECHNIQUES:
        lengths = [len(rec.span) for rec in gold if rec.technique == name]
        per_class[name] = ClassStats(
            count=len(lengths),
            mean_length=sum(lengths) / len(lengths) if lengths else 0.0,
        )

    merged = sum(
        len(merge_spans(spans)) for spans in gold.spans_by_doc().values()
    )

    techniques_by_key: dict[tuple[int, int, int], set[str]] = {}
    for rec in gold:
        techniques_by_key.setdefault(rec.key, set()).add(rec.technique)
    multi = sum(1 for rec in gold if len(techniques_by_key[rec.key]) > 1)
    rate = multi / len(gold) if len(gold) else 0.0

    return StatsReport(
        partition=corpus.partition,
        article_count=len(corpus),
        char_length_mean=char_mean,
        char_length_std=char_std,
        token_length_mean=tok_mean,
        token_length_std=tok_std,
        snippet_count=len(gold),
        merged_snippet_count=merged,
        identical_span_rate=rate,
        per_class=per_class,
    )
