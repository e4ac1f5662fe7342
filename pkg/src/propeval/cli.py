"""The `propeval` command.

Exit codes: 0 success, 1 validation or input-consistency failure, 2 I/O
or parse error, 3 usage error. Every run is deterministic given its
flags and inputs; randomness always flows from an explicit --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import __version__
from .annotations import parse_span_file, serialize_annotations, validate
from .baselines import (
    LengthLogRegModel,
    RandomSiConfig,
    TrainConfig,
    fit_length_logreg,
    predict_length_logreg,
    random_si_baseline,
)
from .combiner import METHODS, class_prior, combine_si, combine_tc, sweep_topk
from .corpus import PARTITIONS, load_articles
from .errors import (
    ArticleNameError,
    DegenerateFeatureError,
    EmptyCorpusError,
    EmptyEnsembleError,
    EncodingError,
    InvalidInputError,
    MisalignedEnsembleError,
    MissingPredictionError,
    ParseError,
)
from .leaderboard import build_leaderboard, load_scores_csv
from .scoring import CONVENTIONS, score_si, score_tc
from .stats import StatsReport, corpus_stats


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; we reserve 2 for I/O errors
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(f"{self.prog}: {message}")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _csv_text(header: list[str], rows: list[list]) -> str:
    import csv
    from io import StringIO

    buf = StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _md_table(header: list[str], rows: list[list]) -> str:
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    for row in rows:
        lines.append("| " + " | ".join(str(c) for c in row) + " |")
    return "\n".join(lines) + "\n"


def _cmd_validate(args: argparse.Namespace) -> int:
    corpus = load_articles(args.articles)
    # the blind test phase ships TC input as bare span lists
    mode = "SI" if args.task == "si" or args.phase == "test" else "TC"
    ann = parse_span_file(args.ann, mode)
    report = validate(corpus, ann)
    if args.format == "json":
        text = _json_text(report.to_json())
    else:
        rows = [["error", f.line, f.kind, f.message] for f in report.errors]
        rows += [["warning", f.line, f.kind, f.message] for f in report.warnings]
        header = ["severity", "line", "kind", "message"]
        text = (
            _csv_text(header, rows) if args.format == "csv" else _md_table(header, rows)
        )
    _emit(text, args.out)
    if not report.ok:
        print(f"validation failed with {len(report.errors)} errors", file=sys.stderr)
        return 1
    return 0


def _cmd_score_si(args: argparse.Namespace) -> int:
    corpus = load_articles(args.articles)
    gold = parse_span_file(args.gold, "SI")
    pred = parse_span_file(args.pred, "SI")
    score = score_si(
        gold,
        pred,
        corpus,
        convention=args.eq_convention,
        per_document=args.per_document,
    )
    if args.format == "json":
        _emit(_json_text(score.to_json()), args.out)
    else:
        _emit(score.to_text() + "\n", args.out)
    return 0


def _cmd_score_tc(args: argparse.Namespace) -> int:
    gold = parse_span_file(args.gold, "TC")
    pred = parse_span_file(args.pred, "TC")
    score = score_tc(gold, pred)
    if args.format == "json":
        _emit(_json_text(score.to_json()), args.out)
    else:
        _emit(score.to_text() + "\n", args.out)
    return 0


def _cmd_baseline_si(args: argparse.Namespace) -> int:
    corpus = load_articles(args.articles)
    cfg = RandomSiConfig(
        seed=args.seed, spans_per_doc=args.spans_per_doc, max_len=args.max_len
    )
    _emit(serialize_annotations(random_si_baseline(corpus, cfg)), args.out)
    return 0


def _cmd_baseline_tc(args: argparse.Namespace) -> int:
    if args.load_model:
        model = LengthLogRegModel.load(args.load_model)
    else:
        train = parse_span_file(args.train, "TC")
        cfg = TrainConfig(
            learning_rate=args.lr,
            epochs=args.epochs,
            l2_penalty=args.l2,
            seed=args.seed,
        )
        model = fit_length_logreg(train, cfg)
    if args.save_model:
        model.save(args.save_model)
    if args.spans:
        spans = parse_span_file(args.spans, "SI")
        _emit(serialize_annotations(predict_length_logreg(model, spans)), args.out)
    elif not args.save_model:
        raise _UsageError("baseline-tc: nothing to do; pass --spans or --save-model")
    return 0


def _cmd_combine(args: argparse.Namespace) -> int:
    if args.task == "si":
        if args.articles is None:
            raise _UsageError("combine --task si needs --articles")
        corpus = load_articles(args.articles)
        systems = [parse_span_file(p, "SI") for p in args.pred]
        combined = combine_si(systems, args.method, corpus)
    else:
        if args.train is None:
            raise _UsageError("combine --task tc needs --train for the tie-break prior")
        prior = class_prior(parse_span_file(args.train, "TC"))
        systems = [parse_span_file(p, "TC") for p in args.pred]
        combined = combine_tc(systems, prior)
    _emit(serialize_annotations(combined), args.out)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    if args.task == "si":
        if args.articles is None:
            raise _UsageError("sweep --task si needs --articles")
        corpus = load_articles(args.articles)
        gold = parse_span_file(args.gold, "SI")
        systems = [parse_span_file(p, "SI") for p in args.pred]
        methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
        curve = sweep_topk(
            systems,
            gold,
            corpus=corpus,
            methods=methods,
            k_max=args.k_max,
            convention=args.eq_convention,
        )
    else:
        if args.train is None:
            raise _UsageError("sweep --task tc needs --train for the tie-break prior")
        gold = parse_span_file(args.gold, "TC")
        systems = [parse_span_file(p, "TC") for p in args.pred]
        prior = class_prior(parse_span_file(args.train, "TC"))
        curve = sweep_topk(systems, gold, k_max=args.k_max, prior=prior)
    _emit(curve.to_csv(), args.out)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(curve.to_svg())
    return 0


def _stats_rows(report: StatsReport) -> tuple[list[str], list[list]]:
    rows: list[list] = [
        ["partition", report.partition],
        ["article_count", report.article_count],
        ["char_length_mean", f"{report.char_length_mean:.5f}"],
        ["char_length_std", f"{report.char_length_std:.5f}"],
        ["token_length_mean", f"{report.token_length_mean:.5f}"],
        ["token_length_std", f"{report.token_length_std:.5f}"],
        ["snippet_count", report.snippet_count],
        ["merged_snippet_count", report.merged_snippet_count],
        ["identical_span_rate", f"{report.identical_span_rate:.5f}"],
    ]
    for name, cs in report.per_class.items():
        rows.append([f"count[{name}]", cs.count])
        rows.append([f"mean_length[{name}]", f"{cs.mean_length:.5f}"])
    return ["metric", "value"], rows


def _cmd_stats(args: argparse.Namespace) -> int:
    corpus = load_articles(args.articles, partition=args.partition)
    gold = parse_span_file(args.gold, "TC")
    report = corpus_stats(corpus, gold)
    if args.format == "json":
        text = _json_text(report.to_json())
    else:
        header, rows = _stats_rows(report)
        text = (
            _csv_text(header, rows) if args.format == "csv" else _md_table(header, rows)
        )
    _emit(text, args.out)
    return 0


def _cmd_leaderboard(args: argparse.Namespace) -> int:
    board = build_leaderboard(args.task, load_scores_csv(args.scores, args.task))
    if args.format == "json":
        text = _json_text(board.to_json())
    elif args.format == "csv":
        text = board.to_csv()
    else:
        text = board.to_markdown()
    _emit(text, args.out)
    return 0


def _add_format(parser: argparse.ArgumentParser, choices: tuple, default: str) -> None:
    parser.add_argument(
        "--format", choices=choices, default=default, help="output format"
    )


def _add_out(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="propeval", description=__doc__)
    parser.add_argument(
        "--version", action="version", version=__version__, help="print the version"
    )
    sub = parser.add_subparsers(
        dest="command", required=True, metavar="SUBCOMMAND", help="what to run"
    )

    p = sub.add_parser("validate", help="check annotations against a corpus")
    p.add_argument("--articles", required=True, help="directory of article<ID>.txt files")
    p.add_argument("--ann", required=True, help="annotation file to check")
    p.add_argument("--task", choices=("si", "tc"), required=True, help="annotation kind")
    p.add_argument(
        "--phase",
        choices=("dev", "test"),
        default="dev",
        help="test phase accepts TC input as label-less span lists",
    )
    _add_format(p, ("json", "md", "csv"), "json")
    _add_out(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("score-si", help="score span identification")
    p.add_argument("--articles", required=True, help="directory of article<ID>.txt files")
    p.add_argument("--gold", required=True, help="gold SI file")
    p.add_argument("--pred", required=True, help="predicted SI file")
    p.add_argument(
        "--eq-convention",
        choices=CONVENTIONS,
        default="corrected",
        help="which denominator convention to evaluate",
    )
    p.add_argument(
        "--per-document",
        action="store_true",
        help="include per-document sums in JSON output",
    )
    _add_format(p, ("text", "json"), "text")
    _add_out(p)
    p.set_defaults(func=_cmd_score_si)

    p = sub.add_parser("score-tc", help="score technique classification")
    p.add_argument("--gold", required=True, help="gold TC file")
    p.add_argument("--pred", required=True, help="predicted TC file")
    _add_format(p, ("text", "json"), "text")
    _add_out(p)
    p.set_defaults(func=_cmd_score_tc)

    p = sub.add_parser("baseline-si", help="generate the random-span baseline")
    p.add_argument("--articles", required=True, help="directory of article<ID>.txt files")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    p.add_argument(
        "--spans-per-doc", type=int, default=2, help="spans generated per document"
    )
    p.add_argument("--max-len", type=int, default=20, help="maximum span length")
    _add_out(p)
    p.set_defaults(func=_cmd_baseline_si)

    p = sub.add_parser(
        "baseline-tc", help="train or apply the fragment-length baseline"
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--train", help="TC gold file to fit on")
    src.add_argument("--load-model", help="previously saved model JSON")
    p.add_argument("--spans", help="span file to label (SI format)")
    p.add_argument("--save-model", help="write the fitted model JSON here")
    p.add_argument("--lr", type=float, default=0.1, help="gradient-descent step size")
    p.add_argument("--epochs", type=int, default=500, help="training epochs")
    p.add_argument("--l2", type=float, default=1e-4, help="L2 penalty on weights")
    p.add_argument("--seed", type=int, default=0, help="weight-init seed")
    _add_out(p)
    p.set_defaults(func=_cmd_baseline_tc)

    p = sub.add_parser("combine", help="combine system outputs")
    p.add_argument("--task", choices=("si", "tc"), required=True, help="output kind")
    p.add_argument(
        "--pred", nargs="+", required=True, help="system output files, best first"
    )
    p.add_argument("--articles", help="articles directory (SI only)")
    p.add_argument(
        "--method",
        choices=METHODS,
        default="majority",
        help="character vote rule (SI; TC always uses majority)",
    )
    p.add_argument("--train", help="TC gold file for the tie-break prior (TC only)")
    _add_out(p)
    p.set_defaults(func=_cmd_combine)

    p = sub.add_parser("sweep", help="score top-k combinations for k = 1..k-max")
    p.add_argument("--task", choices=("si", "tc"), required=True, help="task to sweep")
    p.add_argument("--gold", required=True, help="gold annotation file")
    p.add_argument(
        "--pred", nargs="+", required=True, help="system output files, best first"
    )
    p.add_argument("--articles", help="articles directory (SI only)")
    p.add_argument(
        "--methods",
        default="union,intersection,majority",
        help="comma-separated vote rules to sweep (SI only)",
    )
    p.add_argument("--k-max", type=int, default=None, help="largest ensemble size")
    p.add_argument(
        "--eq-convention",
        choices=CONVENTIONS,
        default="corrected",
        help="SI scoring convention",
    )
    p.add_argument("--train", help="TC gold file for the tie-break prior (TC only)")
    p.add_argument("--svg", help="also write a line chart of the curve here")
    _add_out(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("stats", help="summarize a corpus and its TC gold")
    p.add_argument("--articles", required=True, help="directory of article<ID>.txt files")
    p.add_argument("--gold", required=True, help="TC gold file")
    p.add_argument(
        "--partition",
        choices=PARTITIONS,
        default="unlabeled",
        help="partition label for the report",
    )
    _add_format(p, ("json", "md", "csv"), "json")
    _add_out(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("leaderboard", help="rank a score table")
    p.add_argument("--task", choices=("si", "tc"), required=True, help="score kind")
    p.add_argument("--scores", required=True, help="CSV of system scores")
    _add_format(p, ("json", "md", "csv"), "json")
    _add_out(p)
    p.set_defaults(func=_cmd_leaderboard)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SystemExit as exc:  # --help and --version
        return int(exc.code) if exc.code else 0
    func: Callable[[argparse.Namespace], int] = args.func
    try:
        return func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (
        ParseError,
        EncodingError,
        ArticleNameError,
        EmptyCorpusError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        InvalidInputError,
        MissingPredictionError,
        MisalignedEnsembleError,
        DegenerateFeatureError,
        EmptyEnsembleError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
