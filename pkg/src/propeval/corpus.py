"""Articles on disk and in memory.

An article lives in a file named ``article<ID>.txt`` and is read as UTF-8.
All lengths and offsets elsewhere in the package count Unicode scalar
values of the decoded text, which is exactly what ``len`` gives on a
Python str.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ArticleNameError, EmptyCorpusError, EncodingError

_ARTICLE_NAME = re.compile(r"article(\d+)\.txt\Z")

PARTITIONS = ("training", "development", "test", "unlabeled")


@dataclass(frozen=True, slots=True)
class Document:
    id: int
    text: str

    def __post_init__(self) -> None:
        if self.id < 0:
            raise ValueError(f"document id must be >= 0, got {self.id}")

    @property
    def length(self) -> int:
        return len(self.text)


@dataclass(slots=True)
class Corpus:
    documents: dict[int, Document] = field(default_factory=dict)
    partition: str = "unlabeled"

    def __post_init__(self) -> None:
        if self.partition not in PARTITIONS:
            raise ValueError(f"unknown partition {self.partition!r}")
        for doc_id, doc in self.documents.items():
            if doc_id != doc.id:
                raise ValueError(f"document {doc.id} stored under key {doc_id}")

    def __len__(self) -> int:
        return len(self.documents)

    def __contains__(self, doc_id: int) -> bool:
        return doc_id in self.documents

    def __getitem__(self, doc_id: int) -> Document:
        return self.documents[doc_id]

    def __iter__(self) -> Iterator[Document]:
        for doc_id in sorted(self.documents):
            yield self.documents[doc_id]

    def add(self, doc: Document) -> None:
        if doc.id in self.documents:
            raise ValueError(f"duplicate document id {doc.id}")
        self.documents[doc.id] = doc


def parse_article(file_name: str, data: bytes) -> Document:
    """Decode one article file into a Document.

    The id comes from the digits in the file name; the text must be valid
    UTF-8 (decoding errors are fatal, nothing is replaced).
    """
    m = _ARTICLE_NAME.fullmatch(file_name)
    if m is None:
        raise ArticleNameError(
            f"article file name must match 'article<digits>.txt', got {file_name!r}"
        )
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(
            f"{file_name}: invalid UTF-8 at byte {exc.start}", byte_offset=exc.start
        ) from None
    return Document(id=int(m.group(1)), text=text)


def load_articles(directory: str | Path, partition: str = "unlabeled") -> Corpus:
    """Load every article<ID>.txt under a directory into a Corpus.

    Non-matching file names are ignored; an empty result raises
    EmptyCorpusError.
    """
    directory = Path(directory)
    corpus = Corpus(partition=partition)
    for path in sorted(directory.iterdir()):
        if not path.is_file() or _ARTICLE_NAME.fullmatch(path.name) is None:
            continue
        corpus.add(parse_article(path.name, path.read_bytes()))
    if len(corpus) == 0:
        raise EmptyCorpusError(f"no article<ID>.txt files in {directory}")
    return corpus


def _word_ngrams(text: str, n: int) -> frozenset[tuple[str, ...]]:
    words = text.split()
    return frozenset(tuple(words[i : i + n]) for i in range(len(words) - n + 1))


def find_near_duplicates(
    corpus: Corpus, n: int = 4, threshold: float = 0.8
) -> list[tuple[int, int, float]]:
    """Report document pairs whose word n-gram sets have Jaccard >= threshold.

    Pairs come back sorted by descending similarity, then by ids. Two
    documents shorter than n words both have empty n-gram sets and count
    as identical (similarity 1.0); byte-identical documents therefore
    always report 1.0 whatever n is.
    """
    if n < 1:
        raise ValueError(f"n-gram order must be >= 1, got {n}")
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {threshold}")
    grams = {doc.id: _word_ngrams(doc.text, n) for doc in corpus}
    ids = sorted(grams)
    hits: list[tuple[int, int, float]] = []
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            ga, gb = grams[a], grams[b]
            union = len(ga | gb)
            sim = len(ga & gb) / union if union else 1.0
            if sim >= threshold:
                hits.append((a, b, sim))
    hits.sort(key=lambda row: (-row[2], row[0], row[1]))
    return hits


def corpus_from_documents(docs: Iterable[Document], partition: str = "unlabeled") -> Corpus:
    corpus = Corpus(partition=partition)
    for doc in docs:
        corpus.add(doc)
    return corpus
