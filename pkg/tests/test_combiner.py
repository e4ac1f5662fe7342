"""System combination: voting rules, tie-breaks, and sweep output."""

import csv
import io

import pytest

from propeval import (
    EmptyEnsembleError,
    InvalidInputError,
    MisalignedEnsembleError,
    class_prior,
    combine_si,
    combine_tc,
    score_si,
    sweep_topk,
)
from propeval.annotations import annotation_set, parse_span_file, serialize_annotations
from propeval.techniques import TECHNIQUES

from conftest import FIXTURES


@pytest.fixture()
def si_systems():
    return [
        parse_span_file(FIXTURES / f"sys_{n}_si.tsv", mode="SI")
        for n in ("a", "b", "c")
    ]


@pytest.fixture()
def tc_systems():
    return [
        parse_span_file(FIXTURES / f"sys_{n}_tc.tsv", mode="TC")
        for n in ("a", "b", "c")
    ]


@pytest.fixture()
def train_prior():
    return class_prior(parse_span_file(FIXTURES / "train_tc.tsv", mode="TC"))


def triples(ann):
    return [(r.doc_id, r.span.start, r.span.end) for r in ann.records]


def test_union_keeps_any_vote(si_systems, article_corpus):
    out = combine_si(si_systems, "union", article_corpus)
    assert triples(out) == [
        (101, 0, 20),
        (101, 83, 110),
        (102, 0, 8),
        (102, 80, 106),
        (103, 0, 25),
    ]


def test_majority_needs_strict_majority(si_systems, article_corpus):
    out = combine_si(si_systems, "majority", article_corpus)
    assert triples(out) == [
        (101, 7, 14),
        (101, 90, 102),
        (102, 3, 8),
        (103, 0, 12),
        (103, 13, 25),
    ]


def test_intersection_needs_all_votes(si_systems, article_corpus):
    out = combine_si(si_systems, "intersection", article_corpus)
    assert triples(out) == [(101, 7, 10), (102, 3, 8)]


def test_majority_runs_split_at_uncovered_char(si_systems, article_corpus):
    # doc 103: chars 0-11 and 13-24 each get two votes but char 12 gets one,
    # so the majority output stays two spans instead of one long run
    out = combine_si(si_systems, "majority", article_corpus)
    doc103 = [t for t in triples(out) if t[0] == 103]
    assert doc103 == [(103, 0, 12), (103, 13, 25)]


def test_single_system_is_identity(si_systems, article_corpus):
    for method in ("union", "intersection", "majority"):
        out = combine_si(si_systems[:1], method, article_corpus)
        assert serialize_annotations(out) == (FIXTURES / "sys_a_si.tsv").read_text()


def test_two_of_four_is_not_a_majority(article_corpus):
    a = annotation_set("SI", [(101, 0, 5)])
    b = annotation_set("SI", [(101, 10, 15)])
    out = combine_si([a, a, b, b], "majority", article_corpus)
    assert out.records == []


def test_three_of_four_is_a_majority(article_corpus):
    a = annotation_set("SI", [(101, 0, 5)])
    b = annotation_set("SI", [(101, 10, 15)])
    out = combine_si([a, a, a, b], "majority", article_corpus)
    assert triples(out) == [(101, 0, 5)]


def test_system_order_does_not_matter(si_systems, article_corpus):
    for method in ("union", "intersection", "majority"):
        forward = combine_si(si_systems, method, article_corpus)
        backward = combine_si(si_systems[::-1], method, article_corpus)
        assert forward.records == backward.records


def test_duplicate_spans_within_one_system_count_once(article_corpus):
    # a system repeating itself must not outvote the others
    a = annotation_set("SI", [(101, 0, 5), (101, 0, 5), (101, 2, 6)])
    b = annotation_set("SI", [(101, 20, 25)])
    c = annotation_set("SI", [(101, 30, 35)])
    out = combine_si([a, b, c], "majority", article_corpus)
    assert out.records == []


def test_empty_ensemble_rejected(article_corpus, train_prior):
    with pytest.raises(EmptyEnsembleError):
        combine_si([], "union", article_corpus)
    with pytest.raises(EmptyEnsembleError):
        combine_tc([], train_prior)
    with pytest.raises(EmptyEnsembleError):
        sweep_topk([], annotation_set("SI"), corpus=article_corpus)


def test_unknown_method_rejected(si_systems, article_corpus):
    with pytest.raises(ValueError, match="method"):
        combine_si(si_systems, "plurality", article_corpus)


def test_invalid_system_rejected(si_systems, article_corpus):
    bad = annotation_set("SI", [(101, 0, 9999)])
    with pytest.raises(InvalidInputError):
        combine_si([si_systems[0], bad], "union", article_corpus)


def test_class_prior_counts(train_prior):
    assert train_prior.count("Loaded_Language") == 15
    assert train_prior.count("Name_Calling,Labeling") == 8
    assert train_prior.count("Appeal_to_fear-prejudice") == 4
    assert train_prior.count("Doubt") == 0
    assert train_prior.total == 33
    assert train_prior.usable
    assert set(train_prior.counts) == set(TECHNIQUES)


def test_class_prior_needs_tc_mode():
    with pytest.raises(ValueError):
        class_prior(annotation_set("SI", [(101, 0, 5)]))


def test_class_prior_empty_set():
    prior = class_prior(annotation_set("TC"))
    assert prior.total == 0
    assert not prior.usable


def test_unanimous_vote_is_identity(tc_systems, train_prior):
    out = combine_tc([tc_systems[0]] * 3, train_prior)
    assert serialize_annotations(out) == (FIXTURES / "sys_a_tc.tsv").read_text()


def test_majority_label_per_record(tc_systems, train_prior):
    out = combine_tc(tc_systems, train_prior)
    labels = [r.technique for r in out.records]
    assert labels == [
        "Name_Calling,Labeling",
        "Appeal_to_fear-prejudice",
        "Thought-terminating_Cliches",
        "Loaded_Language",
        "Repetition",
        "Loaded_Language",
        "Doubt",
        "Bandwagon,Reductio_ad_hitlerum",
    ]


def test_majority_beats_prior(train_prior):
    # two votes for a zero-prior class outrank one vote for the most
    # frequent training label
    votes = [
        annotation_set("TC", [(101, 0, 5, "Doubt")]),
        annotation_set("TC", [(101, 0, 5, "Doubt")]),
        annotation_set("TC", [(101, 0, 5, "Loaded_Language")]),
    ]
    out = combine_tc(votes, train_prior)
    assert out.records[0].technique == "Doubt"


def test_tie_goes_to_higher_prior(tc_systems, train_prior):
    out = combine_tc(tc_systems[:2], train_prior)
    by_key = {(r.doc_id, r.span.start, r.span.end): r.technique for r in out.records}
    # Appeal_to_fear-prejudice (prior 4) vs Flag-Waving (prior 0)
    assert by_key[(101, 83, 102)] == "Appeal_to_fear-prejudice"
    # Slogans (prior 2) vs Doubt (prior 0)
    assert by_key[(103, 0, 12)] == "Slogans"


def test_tie_without_prior_goes_to_canonical_order():
    empty_prior = class_prior(annotation_set("TC"))
    votes = [
        annotation_set("TC", [(101, 0, 5, "Flag-Waving")]),
        annotation_set("TC", [(101, 0, 5, "Doubt")]),
    ]
    out = combine_tc(votes, empty_prior)
    assert out.records[0].technique == "Doubt"


def test_repeated_key_records_align_by_occurrence(tc_systems, train_prior):
    # (102, 80, 87) appears twice; system a orders Repetition then
    # Loaded_Language while system b orders them the other way round, so
    # both aligned pairs are ties and the prior decides each one
    out = combine_tc(tc_systems[:2], train_prior)
    pair = [r.technique for r in out.records if r.key == (102, 80, 87)]
    assert pair == ["Loaded_Language", "Loaded_Language"]


def test_output_order_follows_first_system(tc_systems, train_prior):
    out = combine_tc(tc_systems, train_prior)
    assert [r.key for r in out.records] == [r.key for r in tc_systems[0].records]


def test_misaligned_keys_rejected(train_prior):
    a = annotation_set("TC", [(7, 3, 9, "Doubt")])
    b = annotation_set("TC", [(7, 3, 10, "Doubt")])
    with pytest.raises(MisalignedEnsembleError, match=r"doc 7 \(3, 9\)"):
        combine_tc([a, b], train_prior)


def test_combine_tc_rejects_si_mode(train_prior):
    with pytest.raises(ValueError):
        combine_tc([annotation_set("SI", [(101, 0, 5)])], train_prior)


def test_sweep_k1_matches_top_system(si_systems, article_corpus, fixtures):
    gold = parse_span_file(FIXTURES / "gold_si.tsv", mode="SI")
    curve = sweep_topk(si_systems, gold, corpus=article_corpus)
    direct = score_si(gold, si_systems[0], article_corpus)
    for row in curve.rows:
        if row.k == 1:
            assert row.f1 == direct.f1
            assert row.precision == direct.precision
            assert row.recall == direct.recall


def test_sweep_si_rows_and_flagged_chars(si_systems, article_corpus):
    gold = parse_span_file(FIXTURES / "gold_si.tsv", mode="SI")
    curve = sweep_topk(si_systems, gold, corpus=article_corpus)
    assert [(r.k, r.method) for r in curve.rows] == [
        (k, m) for k in (1, 2, 3) for m in ("union", "intersection", "majority")
    ]
    flagged = {(r.k, r.method): r.flagged_chars for r in curve.rows}
    assert flagged[(3, "union")] == 47 + 34 + 25
    assert flagged[(3, "intersection")] == 3 + 5


def test_sweep_union_recall_never_drops(si_systems, article_corpus):
    gold = parse_span_file(FIXTURES / "gold_si.tsv", mode="SI")
    curve = sweep_topk(si_systems, gold, corpus=article_corpus, methods=("union",))
    recalls = [r.recall for r in curve.rows]
    assert recalls == sorted(recalls)


def test_sweep_truncates_oversized_k(si_systems, article_corpus):
    gold = parse_span_file(FIXTURES / "gold_si.tsv", mode="SI")
    with pytest.warns(UserWarning, match="truncating"):
        curve = sweep_topk(
            si_systems, gold, corpus=article_corpus, methods=("union",), k_max=9
        )
    assert [r.k for r in curve.rows] == [1, 2, 3]


def test_sweep_si_needs_corpus(si_systems):
    gold = parse_span_file(FIXTURES / "gold_si.tsv", mode="SI")
    with pytest.raises(ValueError, match="corpus"):
        sweep_topk(si_systems, gold)


def test_sweep_tc_needs_prior(tc_systems):
    gold = parse_span_file(FIXTURES / "gold_tc.tsv", mode="TC")
    with pytest.raises(ValueError, match="prior"):
        sweep_topk(tc_systems, gold)


def test_sweep_si_csv(si_systems, article_corpus):
    gold = parse_span_file(FIXTURES / "gold_si.tsv", mode="SI")
    curve = sweep_topk(si_systems, gold, corpus=article_corpus)
    text = curve.to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["k", "method", "precision", "recall", "f1", "flagged_chars"]
    assert len(rows) == 1 + 9
    for row in rows[1:]:
        float(row[2]), float(row[3]), float(row[4])
        int(row[5])


def test_sweep_tc_csv_quotes_class_names(tc_systems, train_prior):
    gold = parse_span_file(FIXTURES / "gold_tc.tsv", mode="TC")
    curve = sweep_topk(tc_systems, gold, prior=train_prior)
    text = curve.to_csv()
    assert '"Name_Calling,Labeling"' in text.splitlines()[0]
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["k", "micro_f1", *TECHNIQUES]
    assert len(rows[0]) == 16


def test_sweep_tc_scores(tc_systems, train_prior):
    gold = parse_span_file(FIXTURES / "gold_tc.tsv", mode="TC")
    curve = sweep_topk(tc_systems, gold, prior=train_prior)
    by_k = {r.k: r.micro_f1 for r in curve.rows}
    assert by_k[1] == 1.0  # system a reproduces the gold labels
    assert by_k[3] == 0.875  # majority misses only (103, 0, 12)
    for row in curve.rows:
        assert len(row.per_class_f1) == 14


def test_svg_mirrors_csv_points(si_systems, article_corpus):
    gold = parse_span_file(FIXTURES / "gold_si.tsv", mode="SI")
    curve = sweep_topk(si_systems, gold, corpus=article_corpus)
    svg = curve.to_svg()
    assert svg.startswith("<svg ")
    assert svg.count("<polyline") == 3
    assert svg.count("<circle") == len(curve.rows)
    for method in ("union", "intersection", "majority"):
        assert f">{method}</text>" in svg
    assert curve.to_svg() == svg


def test_svg_tc_single_series(tc_systems, train_prior):
    gold = parse_span_file(FIXTURES / "gold_tc.tsv", mode="TC")
    curve = sweep_topk(tc_systems, gold, prior=train_prior)
    svg = curve.to_svg()
    assert svg.count("<polyline") == 1
    assert svg.count("<circle") == 3
