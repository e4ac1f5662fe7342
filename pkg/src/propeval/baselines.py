"""The two official baselines.

For SI: uniformly random spans, drawn per document from an RNG stream
seeded by (seed, doc id) so the output never depends on iteration or
thread order. For TC: multinomial logistic regression on a single
feature, the fragment length, trained by full-batch gradient descent so
every run is reproducible.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .annotations import Annotation, AnnotationSet
from .corpus import Corpus
from .errors import DegenerateFeatureError, EmptyCorpusError
from .spans import Span
from .techniques import TECHNIQUES, canonical_technique


@dataclass(frozen=True, slots=True)
class RandomSiConfig:
    seed: int = 0
    spans_per_doc: int = 2
    max_len: int = 20

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if self.spans_per_doc < 1:
            raise ValueError(f"spans_per_doc must be >= 1, got {self.spans_per_doc}")
        if self.max_len < 1:
            raise ValueError(f"max_len must be >= 1, got {self.max_len}")


def random_si_baseline(corpus: Corpus, cfg: RandomSiConfig) -> AnnotationSet:
    """Generate spans_per_doc random spans per document.

    Each span picks a start uniformly over the document, then a length
    uniformly in [1, max_len]; the end is clamped to the document length.
    Zero-length documents are skipped with a warning.
    """
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot generate a baseline for an empty corpus")
    out = AnnotationSet(mode="SI")
    for doc in corpus:
        if doc.length == 0:
            warnings.warn(f"skipping zero-length document {doc.id}", stacklevel=2)
            continue
        rng = np.random.default_rng([cfg.seed, doc.id])
        for _ in range(cfg.spans_per_doc):
            start = int(rng.integers(0, doc.length))
            length = int(rng.integers(1, cfg.max_len + 1))
            end = min(start + length, doc.length)
            out.append(Annotation(doc.id, Span(start, end)))
    return out


@dataclass(frozen=True, slots=True)
class TrainConfig:
    learning_rate: float = 0.1
    epochs: int = 500
    l2_penalty: float = 1e-4
    seed: int = 0

    def __post_init__(self) -> None:
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.l2_penalty < 0:
            raise ValueError(f"l2_penalty must be >= 0, got {self.l2_penalty}")


@dataclass(slots=True)
class LengthLogRegModel:
    weights: np.ndarray  # shape (C,)
    biases: np.ndarray  # shape (C,)
    mu: float
    sigma: float
    classes: tuple[str, ...]
    config: TrainConfig
    loss_history: list[float] = field(default_factory=list)

    def standardize(self, lengths: np.ndarray) -> np.ndarray:
        return (np.asarray(lengths, dtype=np.float64) - self.mu) / self.sigma

    def predict_proba(self, lengths: np.ndarray) -> np.ndarray:
        z = self.standardize(lengths)
        logits = np.outer(z, self.weights) + self.biases
        logits -= logits.max(axis=1, keepdims=True)
        e = np.exp(logits)
        return e / e.sum(axis=1, keepdims=True)

    def predict_index(self, lengths: np.ndarray) -> np.ndarray:
        # argmax takes the first maximum, i.e. canonical class order on ties
        return np.argmax(self.predict_proba(lengths), axis=1)

    def to_json(self) -> dict:
        return {
            "weights": self.weights.tolist(),
            "biases": self.biases.tolist(),
            "mu": self.mu,
            "sigma": self.sigma,
            "classes": list(self.classes),
            "config": {
                "learning_rate": self.config.learning_rate,
                "epochs": self.config.epochs,
                "l2_penalty": self.config.l2_penalty,
                "seed": self.config.seed,
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "LengthLogRegModel":
        classes = tuple(canonical_technique(c) for c in data["classes"])
        return cls(
            weights=np.asarray(data["weights"], dtype=np.float64),
            biases=np.asarray(data["biases"], dtype=np.float64),
            mu=float(data["mu"]),
            sigma=float(data["sigma"]),
            classes=classes,
            config=TrainConfig(**data["config"]),
        )

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path: str | Path) -> "LengthLogRegModel":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _loss_and_grad(
    w: np.ndarray,
    b: np.ndarray,
    z: np.ndarray,
    onehot: np.ndarray,
    l2: float,
) -> tuple[float, np.ndarray, np.ndarray]:
    n = z.shape[0]
    logits = np.outer(z, w) + b
    logits -= logits.max(axis=1, keepdims=True)
    e = np.exp(logits)
    probs = e / e.sum(axis=1, keepdims=True)
    # cross-entropy on the true class plus (l2/2)||w||^2; biases unpenalized
    ll = np.log(probs[onehot.astype(bool)])
    loss = -ll.sum() / n + 0.5 * l2 * float(w @ w)
    delta = (probs - onehot) / n
    grad_w = delta.T @ z + l2 * w
    grad_b = delta.sum(axis=0)
    return float(loss), grad_w, grad_b


def fit_length_logreg(train: AnnotationSet, cfg: TrainConfig = TrainConfig()) -> LengthLogRegModel:
    """Fit the length-only classifier on TC gold annotations.

    The single feature is z-scored before the linear layer; training is
    plain full-batch gradient descent for cfg.epochs steps. loss_history
    holds the loss before each step plus the final loss, so it has
    epochs + 1 entries and must be non-increasing at the default rate.
    """
    if train.mode != "TC":
        raise ValueError("fit_length_logreg needs TC-mode training data")
    if len(train) == 0:
        raise DegenerateFeatureError("empty training set")
    lengths = np.array([len(rec.span) for rec in train], dtype=np.float64)
    if np.unique(lengths).shape[0] < 2:
        raise DegenerateFeatureError(
            "training lengths are all identical; the length feature carries no signal"
        )
    mu = float(lengths.mean())
    sigma = float(lengths.std())
    z = (lengths - mu) / sigma

    classes = TECHNIQUES
    index = {name: i for i, name in enumerate(classes)}
    onehot = np.zeros((len(train), len(classes)), dtype=np.float64)
    for row, rec in enumerate(train):
        onehot[row, index[rec.technique]] = 1.0

    rng = np.random.default_rng(cfg.seed)
    w = rng.normal(0.0, 0.01, size=len(classes))
    b = np.zeros(len(classes), dtype=np.float64)

    history: list[float] = []
    for _ in range(cfg.epochs):
        loss, gw, gb = _loss_and_grad(w, b, z, onehot, cfg.l2_penalty)
        history.append(loss)
        w = w - cfg.learning_rate * gw
        b = b - cfg.learning_rate * gb
    final_loss, _, _ = _loss_and_grad(w, b, z, onehot, cfg.l2_penalty)
    history.append(final_loss)

    return LengthLogRegModel(
        weights=w,
        biases=b,
        mu=mu,
        sigma=sigma,
        classes=classes,
        config=cfg,
        loss_history=history,
    )


def logreg_gradient(
    model: LengthLogRegModel, lengths: np.ndarray, label_indices: np.ndarray
) -> np.ndarray:
    """Analytic gradient at the model's current parameters, flattened as
    [d/dw_0..d/dw_C-1, d/db_0..d/db_C-1] for finite-difference checks."""
    lengths = np.asarray(lengths, dtype=np.float64)
    if lengths.shape[0] == 0:
        raise ValueError("gradient needs a nonempty batch")
    z = model.standardize(lengths)
    onehot = np.zeros((lengths.shape[0], len(model.classes)), dtype=np.float64)
    onehot[np.arange(lengths.shape[0]), np.asarray(label_indices, dtype=np.int64)] = 1.0
    _, gw, gb = _loss_and_grad(
        model.weights, model.biases, z, onehot, model.config.l2_penalty
    )
    return np.concatenate([gw, gb])


def logreg_loss(
    model: LengthLogRegModel, lengths: np.ndarray, label_indices: np.ndarray
) -> float:
    """Regularized cross-entropy at the current parameters (the quantity
    logreg_gradient differentiates)."""
    lengths = np.asarray(lengths, dtype=np.float64)
    z = model.standardize(lengths)
    onehot = np.zeros((lengths.shape[0], len(model.classes)), dtype=np.float64)
    onehot[np.arange(lengths.shape[0]), np.asarray(label_indices, dtype=np.int64)] = 1.0
    loss, _, _ = _loss_and_grad(
        model.weights, model.biases, z, onehot, model.config.l2_penalty
    )
    return loss


def predict_length_logreg(model: LengthLogRegModel, spans: AnnotationSet) -> AnnotationSet:
    """Label every record with its argmax-probability class.

    Input records may be SI-shaped or carry labels to overwrite; output
    order follows input order.
    """
    out = AnnotationSet(mode="TC")
    if len(spans) == 0:
        return out
    lengths = np.array([len(rec.span) for rec in spans], dtype=np.float64)
    picks = model.predict_index(lengths)
    for rec, k in zip(spans, picks):
        out.append(Annotation(rec.doc_id, rec.span, model.classes[int(k)]))
    return out
