from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from propeval import Document, Span, annotation_set, corpus_from_documents, load_articles

FIXTURES = Path(__file__).parent / "fixtures"
ARTICLES = FIXTURES / "articles"


# -- acceptance-criteria reporting ------------------------------------------
# tests marked @pytest.mark.criterion("...") get one PASS/FAIL/SKIP line in
# the terminal summary, so a full run ends with the checklist in plain sight

_CRITERIA: list[tuple[str, str]] = []


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(name): names the acceptance criterion a test enforces"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA.append((marker.args[0], label))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, label in _CRITERIA:
        terminalreporter.write_line(f"[{label}] {name}")


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture
def articles_dir() -> Path:
    return ARTICLES


@pytest.fixture
def mini_corpus():
    return corpus_from_documents(
        [Document(1, "x" * 200), Document(2, "y" * 120), Document(3, "z" * 400)]
    )


@pytest.fixture
def article_corpus():
    return load_articles(ARTICLES)


def random_spans(rng: np.random.Generator, doc_len: int, max_spans: int) -> list[Span]:
    n = int(rng.integers(0, max_spans + 1))
    spans = []
    for _ in range(n):
        start = int(rng.integers(0, doc_len))
        length = int(rng.integers(1, max(2, doc_len // 4)))
        spans.append(Span(start, min(start + length, doc_len)))
    return spans


def random_si_pair(rng: np.random.Generator, doc_lens: dict[int, int], max_spans: int = 8):
    """Random gold and pred annotation sets over the given documents."""
    gold = []
    pred = []
    for doc_id, doc_len in doc_lens.items():
        for s in random_spans(rng, doc_len, max_spans):
            gold.append((doc_id, s.start, s.end))
        for s in random_spans(rng, doc_len, max_spans):
            pred.append((doc_id, s.start, s.end))
    return annotation_set("SI", gold), annotation_set("SI", pred)
