"""propeval: scoring, baselines, and system combination for
character-offset propaganda-span annotations."""

from .annotations import (
    Annotation,
    AnnotationSet,
    ValidationReport,
    annotation_set,
    parse_span_file,
    parse_span_line,
    serialize_annotations,
    validate,
    write_annotations,
)
from .baselines import (
    LengthLogRegModel,
    RandomSiConfig,
    TrainConfig,
    fit_length_logreg,
    logreg_gradient,
    logreg_loss,
    predict_length_logreg,
    random_si_baseline,
)
from .combiner import (
    ClassPrior,
    SweepCurve,
    class_prior,
    combine_si,
    combine_tc,
    sweep_topk,
)
from .corpus import (
    Corpus,
    Document,
    corpus_from_documents,
    find_near_duplicates,
    load_articles,
    parse_article,
)
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
    PropevalError,
)
from .kernels import active_backend, set_backend
from .leaderboard import Leaderboard, build_leaderboard, load_scores_csv
from .scoring import (
    SiScore,
    TcScore,
    resolve_identical_spans,
    score_si,
    score_tc,
)
from .spans import Span, merge_spans
from .stats import StatsReport, corpus_stats
from .techniques import TECHNIQUES, canonical_technique, register_alias

__version__ = "0.1.0"

__all__ = [
    "Annotation",
    "AnnotationSet",
    "ArticleNameError",
    "ClassPrior",
    "Corpus",
    "DegenerateFeatureError",
    "Document",
    "EmptyCorpusError",
    "EmptyEnsembleError",
    "EncodingError",
    "InvalidInputError",
    "Leaderboard",
    "MisalignedEnsembleError",
    "MissingPredictionError",
    "ParseError",
    "PropevalError",
    "LengthLogRegModel",
    "RandomSiConfig",
    "SiScore",
    "Span",
    "StatsReport",
    "SweepCurve",
    "TECHNIQUES",
    "TcScore",
    "TrainConfig",
    "ValidationReport",
    "active_backend",
    "annotation_set",
    "build_leaderboard",
    "canonical_technique",
    "class_prior",
    "combine_si",
    "combine_tc",
    "corpus_from_documents",
    "corpus_stats",
    "find_near_duplicates",
    "fit_length_logreg",
    "load_articles",
    "load_scores_csv",
    "logreg_gradient",
    "logreg_loss",
    "merge_spans",
    "parse_article",
    "parse_span_file",
    "parse_span_line",
    "predict_length_logreg",
    "random_si_baseline",
    "register_alias",
    "resolve_identical_spans",
    "score_si",
    "score_tc",
    "serialize_annotations",
    "set_backend",
    "sweep_topk",
    "validate",
    "write_annotations",
]
