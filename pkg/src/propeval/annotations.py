"""Annotation records, the TSV file grammar, and validation against a corpus.

SI lines carry three tab-separated fields, TC lines four:

    <doc_id>\t<start>\t<end>
    <doc_id>\t<technique>\t<start>\t<end>

Offsets are decimal, half-open, counted in Unicode scalar values. Line
order is preserved so a parsed file can be written back byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .corpus import Corpus
from .errors import ParseError
from .spans import Span, merge_spans
from .techniques import canonical_technique

MODES = ("SI", "TC")


@dataclass(frozen=True, slots=True)
class Annotation:
    doc_id: int
    span: Span
    technique: str | None = None

    @property
    def key(self) -> tuple[int, int, int]:
        """(doc, start, end) identity used for grouping and matching."""
        return (self.doc_id, self.span.start, self.span.end)


@dataclass(slots=True)
class AnnotationSet:
    mode: str
    records: list[Annotation] = field(default_factory=list)
    # source line numbers when parsed from a file, for diagnostics
    lines: list[int] | None = None

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be SI or TC, got {self.mode!r}")
        for rec in self.records:
            self._check_mode(rec)
        if self.lines is not None and len(self.lines) != len(self.records):
            raise ValueError("lines and records must have equal length")

    def _check_mode(self, rec: Annotation) -> None:
        if self.mode == "SI" and rec.technique is not None:
            raise ValueError(f"SI record must not carry a technique: {rec}")
        if self.mode == "TC" and rec.technique is None:
            raise ValueError(f"TC record must carry a technique: {rec}")

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[Annotation]:
        return iter(self.records)

    def append(self, rec: Annotation) -> None:
        self._check_mode(rec)
        self.records.append(rec)

    def line_of(self, index: int) -> int:
        """Source line of record `index`, or its 1-based ordinal if unknown."""
        if self.lines is not None:
            return self.lines[index]
        return index + 1

    def doc_ids(self) -> list[int]:
        return sorted({rec.doc_id for rec in self.records})

    def spans_by_doc(self) -> dict[int, list[Span]]:
        out: dict[int, list[Span]] = {}
        for rec in self.records:
            out.setdefault(rec.doc_id, []).append(rec.span)
        return out


def parse_span_line(line: str, mode: str, lineno: int) -> Annotation:
    fields = line.split("\t")
    want = 3 if mode == "SI" else 4
    if len(fields) != want:
        raise ParseError(
            f"expected {want} tab-separated fields for {mode}, got {len(fields)}",
            line=lineno,
        )
    technique = None
    if mode == "TC":
        try:
            technique = canonical_technique(fields[1])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
        del fields[1]
    try:
        doc_id = int(fields[0])
        start = int(fields[1])
        end = int(fields[2])
    except ValueError:
        raise ParseError(f"non-integer field in {line!r}", line=lineno) from None
    if doc_id < 0:
        raise ParseError(f"doc id must be >= 0, got {doc_id}", line=lineno)
    if start < 0 or end <= start:
        raise ParseError(
            f"need 0 <= start < end, got start={start} end={end}", line=lineno
        )
    return Annotation(doc_id=doc_id, span=Span(start, end), technique=technique)


def parse_span_file(path: str | Path, mode: str) -> AnnotationSet:
    """Parse an SI or TC annotation file, preserving record order.

    Blank lines are skipped. Any malformed line raises ParseError carrying
    its line number.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be SI or TC, got {mode!r}")
    records: list[Annotation] = []
    lines: list[int] = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            continue
        records.append(parse_span_line(line, mode, lineno))
        lines.append(lineno)
    return AnnotationSet(mode=mode, records=records, lines=lines)


def serialize_annotations(ann: AnnotationSet) -> str:
    """Render records in canonical file form: one LF-terminated line each."""
    parts: list[str] = []
    for rec in ann.records:
        if ann.mode == "SI":
            parts.append(f"{rec.doc_id}\t{rec.span.start}\t{rec.span.end}\n")
        else:
            parts.append(
                f"{rec.doc_id}\t{rec.technique}\t{rec.span.start}\t{rec.span.end}\n"
            )
    return "".join(parts)


def write_annotations(ann: AnnotationSet, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_annotations(ann))


@dataclass(slots=True)
class Finding:
    line: int
    kind: str
    message: str

    def as_tuple(self) -> tuple[int, str, str]:
        return (self.line, self.kind, self.message)


@dataclass(slots=True)
class ValidationReport:
    errors: list[Finding] = field(default_factory=list)
    warnings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "errors": [f.as_tuple() for f in self.errors],
            "warnings": [f.as_tuple() for f in self.warnings],
        }


def validate(corpus: Corpus, ann: AnnotationSet) -> ValidationReport:
    """Check every record against the corpus; findings never raise.

    Errors: unknown document, span extending past the document end.
    Warnings (SI only): exact duplicate records, and gold-style overlap
    between records of one document, which downstream merging will fold
    together anyway.
    """
    report = ValidationReport()
    seen: dict[tuple[int, int, int], int] = {}
    for i, rec in enumerate(ann.records):
        line = ann.line_of(i)
        if rec.doc_id not in corpus:
            report.errors.append(
                Finding(line, "unknown-doc", f"doc {rec.doc_id} not in corpus")
            )
            continue
        doc_len = corpus[rec.doc_id].length
        if rec.span.end > doc_len:
            report.errors.append(
                Finding(
                    line,
                    "span-out-of-bounds",
                    f"span ({rec.span.start}, {rec.span.end}) exceeds document "
                    f"length {doc_len} of doc {rec.doc_id}",
                )
            )
        if ann.mode == "SI":
            first = seen.setdefault(rec.key, line)
            if first != line:
                report.warnings.append(
                    Finding(
                        line,
                        "duplicate-record",
                        f"duplicate of line {first}: doc {rec.doc_id} span "
                        f"({rec.span.start}, {rec.span.end})",
                    )
                )
    if ann.mode == "SI":
        for doc_id, spans in sorted(ann.spans_by_doc().items()):
            if len(merge_spans(spans)) < len(set(spans)):
                report.warnings.append(
                    Finding(
                        0,
                        "overlapping-spans",
                        f"doc {doc_id} has overlapping spans; scoring merges them",
                    )
                )
    return report


def annotation_set(
    mode: str, triples: Iterable[tuple] = ()
) -> AnnotationSet:
    """Small builder used by tests and baselines.

    SI triples are (doc_id, start, end); TC quadruples add the technique
    last: (doc_id, start, end, technique).
    """
    out = AnnotationSet(mode=mode)
    for t in triples:
        if mode == "SI":
            doc_id, start, end = t
            out.append(Annotation(doc_id, Span(start, end)))
        else:
            doc_id, start, end, tech = t
            out.append(Annotation(doc_id, Span(start, end), canonical_technique(tech)))
    return out
