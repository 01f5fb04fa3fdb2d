"""Input validation helpers shared by the estimator front ends."""

from __future__ import annotations

import os
from pathlib import Path
from typing import Mapping

from sklearn.utils.validation import check_is_fitted  # noqa: F401  (re-exported)

from .source_model import Corpus, ExclusionFilter, Language, SourceFile, corpus_from_texts, load_corpus


def check_corpus(X, language: "Language | str | None" = None,
                 exclude: "ExclusionFilter | None" = None) -> Corpus:
    """Coerce ``X`` to a :class:`Corpus`.

    Accepts a corpus, a directory path, a list of source files or a mapping
    of relative path to source text.
    """
    if isinstance(X, Corpus):
        return X
    if isinstance(X, (str, os.PathLike)):
        if not Path(X).is_dir():
            raise ValueError(f"expected a corpus directory, got {str(X)!r}")
        return load_corpus(X, exclude, language or Language.JAVA)
    if isinstance(X, Mapping):
        return corpus_from_texts(dict(X), language or Language.JAVA)
    if isinstance(X, (list, tuple)) and all(isinstance(f, SourceFile) for f in X):
        lang = X[0].language if X else Language.parse(language or Language.JAVA)
        return Corpus(files=sorted(X, key=lambda f: f.path), language=lang)
    raise TypeError(f"cannot interpret {type(X).__name__} as a source corpus")


def check_fraction(value: float, name: str) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be within [0, 1], got {value}")
    return value


def check_ordinal(value: int, name: str, low: int = 1, high: int = 5) -> int:
    if isinstance(value, bool) or int(value) != value or not low <= value <= high:
        raise ValueError(f"{name} must be an integer in [{low}, {high}], got {value!r}")
    return int(value)
