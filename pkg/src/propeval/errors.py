"""Exception types shared across the toolkit.

Every error raised on bad input derives from PropevalError so the CLI can
map failures to exit codes without pattern-matching message strings.
"""

from __future__ import annotations


class PropevalError(Exception):
    """Base class for all toolkit errors."""


class ArticleNameError(PropevalError):
    """Article file name does not match ``article<digits>.txt``."""


class EncodingError(PropevalError):
    """Input bytes are not valid UTF-8."""

    def __init__(self, message: str, byte_offset: int):
        super().__init__(message)
        self.byte_offset = byte_offset


class ParseError(PropevalError):
    """Malformed annotation line; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class EmptyCorpusError(PropevalError):
    """Operation requires at least one document."""


class InvalidInputError(PropevalError):
    """Annotations failed validation against the corpus.

    Carries the full ValidationReport so callers can show every finding.
    """

    def __init__(self, message: str, report):
        super().__init__(message)
        self.report = report


class MissingPredictionError(PropevalError):
    """Prediction (doc, span) keys do not cover the gold keys exactly."""

    def __init__(self, message: str, keys=()):
        super().__init__(message)
        self.keys = list(keys)


class DegenerateFeatureError(PropevalError):
    """Training data has fewer than two distinct feature values."""


class EmptyEnsembleError(PropevalError):
    """System combination called with no systems."""


class MisalignedEnsembleError(PropevalError):
    """Ensemble members do not share the same (doc, span) key multiset."""
