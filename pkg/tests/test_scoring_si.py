import numpy as np
import pytest

from propeval import Document, annotation_set, corpus_from_documents, score_si
from propeval.errors import InvalidInputError

from conftest import random_si_pair
from oracles import bitmap_score_si


def _corpus(n_docs=1, length=100):
    return corpus_from_documents(
        [Document(i + 1, "x" * length) for i in range(n_docs)]
    )


def test_identity_scores_one():
    corpus = _corpus()
    gold = annotation_set("SI", [(1, 0, 10), (1, 20, 30)])
    for conv in ("corrected", "literal-paper"):
        s = score_si(gold, gold, corpus, convention=conv)
        assert (s.precision, s.recall, s.f1) == (1.0, 1.0, 1.0)


def test_empty_predictions_score_zero():
    corpus = _corpus()
    gold = annotation_set("SI", [(1, 0, 10)])
    s = score_si(gold, annotation_set("SI", []), corpus)
    assert (s.precision, s.recall, s.f1) == (0.0, 0.0, 0.0)


def test_empty_gold_scores_zero():
    corpus = _corpus()
    pred = annotation_set("SI", [(1, 0, 10)])
    s = score_si(annotation_set("SI", []), pred, corpus)
    assert (s.precision, s.recall, s.f1) == (0.0, 0.0, 0.0)


def test_worked_example_both_conventions():
    corpus = _corpus(length=10)
    gold = annotation_set("SI", [(1, 0, 10)])
    pred = annotation_set("SI", [(1, 0, 5)])

    s = score_si(gold, pred, corpus, convention="corrected")
    assert s.precision == 1.0
    assert s.recall == 0.5
    assert s.f1 == pytest.approx(2 / 3)

    s = score_si(gold, pred, corpus, convention="literal-paper")
    assert s.precision == 0.5
    assert s.recall == 1.0
    assert s.f1 == pytest.approx(2 / 3)


def test_strict_subset_prediction_has_exact_unit_precision():
    corpus = _corpus(length=200)
    gold = annotation_set("SI", [(1, 10, 110)])
    pred = annotation_set("SI", [(1, 40, 47)])
    s = score_si(gold, pred, corpus, convention="corrected")
    assert s.precision == 1.0  # exact, not approximate
    assert s.recall == pytest.approx(7 / 100)


def test_gold_inside_prediction_has_unit_recall():
    corpus = _corpus(length=200)
    gold = annotation_set("SI", [(1, 40, 47)])
    pred = annotation_set("SI", [(1, 10, 110)])
    s = score_si(gold, pred, corpus, convention="corrected")
    assert s.recall == 1.0


def test_two_document_fixture():
    # doc 1 predicted exactly, doc 2 gold missed entirely
    corpus = _corpus(n_docs=2)
    gold = annotation_set("SI", [(1, 0, 10), (2, 0, 10)])
    pred = annotation_set("SI", [(1, 0, 10)])
    s = score_si(gold, pred, corpus)
    assert s.precision == 1.0
    assert s.recall == 0.5
    assert s.f1 == pytest.approx(2 / 3)


def test_literal_convention_can_exceed_one():
    # two touching gold spans against one covering prediction: each pair
    # term is |s n t| / |t| = 1, and |S| = 1, so P = 2
    corpus = _corpus(length=10)
    gold = annotation_set("SI", [(1, 0, 5), (1, 5, 10)])
    pred = annotation_set("SI", [(1, 0, 10)])
    s = score_si(gold, pred, corpus, convention="literal-paper")
    assert s.precision == 2.0
    s = score_si(gold, pred, corpus, convention="corrected")
    assert s.precision == 1.0 and s.recall == 1.0


def test_overlapping_gold_is_merged_before_scoring():
    corpus = _corpus()
    gold = annotation_set("SI", [(1, 0, 10), (1, 5, 15)])
    pred = annotation_set("SI", [(1, 0, 15)])
    s = score_si(gold, pred, corpus)
    assert (s.precision, s.recall, s.f1) == (1.0, 1.0, 1.0)


def test_record_and_document_permutation_invariance():
    import random

    rng = np.random.default_rng(7)
    corpus = _corpus(n_docs=3, length=300)
    gold, pred = random_si_pair(rng, {1: 300, 2: 300, 3: 300})
    base = score_si(gold, pred, corpus)
    shuffler = random.Random(7)
    for _ in range(5):
        g_triples = [(r.doc_id, r.span.start, r.span.end) for r in gold]
        p_triples = [(r.doc_id, r.span.start, r.span.end) for r in pred]
        shuffler.shuffle(g_triples)
        shuffler.shuffle(p_triples)
        again = score_si(
            annotation_set("SI", g_triples), annotation_set("SI", p_triples), corpus
        )
        assert again.precision == base.precision
        assert again.recall == base.recall


def test_random_cases_match_bitmap_oracle():
    rng = np.random.default_rng(123)
    corpus = _corpus(n_docs=2, length=400)
    for _ in range(50):
        gold, pred = random_si_pair(rng, {1: 400, 2: 400}, max_spans=6)
        gold_by_doc = {}
        for r in gold:
            gold_by_doc.setdefault(r.doc_id, []).append((r.span.start, r.span.end))
        pred_by_doc = {}
        for r in pred:
            pred_by_doc.setdefault(r.doc_id, []).append((r.span.start, r.span.end))
        for conv in ("corrected", "literal-paper"):
            want = bitmap_score_si(gold_by_doc, pred_by_doc, conv)
            got = score_si(gold, pred, corpus, convention=conv)
            assert got.precision == pytest.approx(want[0], abs=1e-12)
            assert got.recall == pytest.approx(want[1], abs=1e-12)
            assert got.f1 == pytest.approx(want[2], abs=1e-12)


def test_corrected_scores_stay_in_unit_interval():
    rng = np.random.default_rng(99)
    corpus = _corpus(n_docs=3, length=500)
    for _ in range(100):
        gold, pred = random_si_pair(rng, {1: 500, 2: 500, 3: 500})
        s = score_si(gold, pred, corpus, convention="corrected")
        assert 0.0 <= s.precision <= 1.0
        assert 0.0 <= s.recall <= 1.0
        assert 0.0 <= s.f1 <= 1.0


def test_validation_failure_raises():
    corpus = _corpus(length=10)
    good = annotation_set("SI", [(1, 0, 5)])
    bad = annotation_set("SI", [(1, 0, 99)])
    with pytest.raises(InvalidInputError) as exc:
        score_si(good, bad, corpus)
    assert not exc.value.report.ok
    with pytest.raises(InvalidInputError):
        score_si(bad, good, corpus)


def test_unknown_convention_rejected():
    corpus = _corpus()
    ann = annotation_set("SI", [(1, 0, 5)])
    with pytest.raises(ValueError, match="convention"):
        score_si(ann, ann, corpus, convention="official")


def test_per_document_terms_decompose_the_totals():
    rng = np.random.default_rng(5)
    corpus = _corpus(n_docs=3, length=200)
    gold, pred = random_si_pair(rng, {1: 200, 2: 200, 3: 200})
    s = score_si(gold, pred, corpus, per_document=True)
    total_pred = sum(t.pred_spans for t in s.per_document.values())
    p_sum = sum(t.precision_sum for t in s.per_document.values())
    assert s.precision == pytest.approx(p_sum / total_pred if total_pred else 0.0)


def test_json_serialization_rounds_to_five_places():
    corpus = _corpus(length=30)
    gold = annotation_set("SI", [(1, 0, 3)])
    pred = annotation_set("SI", [(1, 0, 9)])
    data = score_si(gold, pred, corpus).to_json()
    assert data["precision"] == round(1 / 3, 5)
    assert data["convention"] == "corrected"
