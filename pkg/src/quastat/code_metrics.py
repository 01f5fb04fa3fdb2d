"""Size, comment, complexity and nesting metrics with threshold checks.

Cyclomatic complexity is the usual token approximation of McCabe's
number: one plus the branch keywords, short-circuit operators and
ternaries found in a method.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from sklearn.base import BaseEstimator

from .source_model import COMMENTS, TRIVIA, Language, SourceFile, Token, TokenKind
from .validation import check_corpus, check_is_fitted


class ConfigError(ValueError):
    pass


_BRANCH = {"if", "for", "while", "do", "case", "catch"}
_BRANCH_CS = _BRANCH | {"foreach"}
_TYPE_DECL = {"class", "interface", "enum", "struct"}


@dataclass(frozen=True)
class MethodMetrics:
    file: str
    method: str
    start_line: int
    cc: int
    depth: int
    statements: int

    @property
    def name(self) -> str:
        return f"{self.file}::{self.method}@{self.start_line}"

    def to_dict(self) -> dict:
        return {"file": self.file, "method": self.method, "line": self.start_line, "cc": self.cc,
                "depth": self.depth, "statements": self.statements}


@dataclass
class FileMetrics:
    file: str
    loc: int
    sloc: int
    comment_lines: int
    n_types: int
    n_methods: int
    n_statements: int
    lexer_errors: bool = False

    @property
    def comment_ratio(self) -> float:
        return self.comment_lines / self.loc if self.loc else 0.0


@dataclass
class MetricsProfile:
    loc: int
    sloc: int
    comment_lines: int
    n_types: int
    n_methods: int
    n_statements: int
    per_method: list[MethodMetrics]
    per_file: list[FileMetrics] = field(default_factory=list)

    @property
    def comment_ratio(self) -> float:
        return self.comment_lines / self.loc if self.loc else 0.0

    @property
    def max_cyclomatic(self) -> int:
        return max((m.cc for m in self.per_method), default=0)

    @property
    def max_nested_depth(self) -> int:
        return max((m.depth for m in self.per_method), default=0)

    @property
    def flagged_files(self) -> list[str]:
        return [f.file for f in self.per_file if f.lexer_errors]

    def value(self, metric: str) -> float:
        if metric not in CORPUS_METRICS:
            raise ConfigError(f"unknown metric {metric!r}; valid: {', '.join(sorted(ALL_METRICS))}")
        return getattr(self, metric)

    def to_dict(self) -> dict:
        return {
            "loc": self.loc, "sloc": self.sloc, "comment_lines": self.comment_lines,
            "comment_ratio": round(self.comment_ratio, 4),
            "n_types": self.n_types, "n_methods": self.n_methods, "n_statements": self.n_statements,
            "max_cyclomatic": self.max_cyclomatic, "max_nested_depth": self.max_nested_depth,
            "per_method": [m.to_dict() for m in self.per_method],
            "per_file": [{"file": f.file, "loc": f.loc, "sloc": f.sloc, "comment_lines": f.comment_lines,
                          "n_types": f.n_types, "n_methods": f.n_methods, "n_statements": f.n_statements,
                          "lexer_errors": f.lexer_errors} for f in self.per_file],
            "flagged_files": self.flagged_files,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "MetricsProfile":
        methods = [MethodMetrics(m["file"], m["method"], m["line"], m["cc"], m["depth"], m["statements"])
                   for m in d.get("per_method", [])]
        files = [FileMetrics(f["file"], f["loc"], f["sloc"], f["comment_lines"], f["n_types"],
                             f["n_methods"], f["n_statements"], f.get("lexer_errors", False))
                 for f in d.get("per_file", [])]
        return cls(d["loc"], d["sloc"], d["comment_lines"], d["n_types"], d["n_methods"],
                   d["n_statements"], methods, files)


def _ternary(toks: Sequence[Token], i: int) -> bool:
    """Is ``toks[i]`` (a ``?``) a conditional operator with a matching ``:``?"""
    if i > 0 and toks[i - 1].text in ("<", ","):
        return False
    depth = pending = 0
    for t in toks[i + 1:]:
        s = t.text
        if s in ("(", "[", "{"):
            depth += 1
        elif s in (")", "]", "}"):
            depth -= 1
            if depth < 0:
                return False
        elif depth == 0:
            if s == ";":
                return False
            if s == "?":
                pending += 1
            elif s == ":":
                if pending == 0:
                    return True
                pending -= 1
    return False


def cyclomatic(tokens: Sequence[Token], language: Language = Language.JAVA) -> int:
    branch = _BRANCH_CS if language is Language.CSHARP else _BRANCH
    toks = [t for t in tokens if t.kind not in TRIVIA]
    cc = 1
    for i, t in enumerate(toks):
        if t.kind is TokenKind.KEYWORD and t.text in branch:
            cc += 1
        elif t.kind is TokenKind.OPERATOR and t.text in ("&&", "||"):
            cc += 1
        elif t.text == "?" and _ternary(toks, i):
            cc += 1
    return cc


def nesting_depth(tokens: Sequence[Token]) -> int:
    """Deepest brace nesting below the first (body) brace."""
    depth = best = 0
    started = False
    for t in tokens:
        if t.kind in TRIVIA:
            continue
        if t.text == "{":
            if started:
                depth += 1
                best = max(best, depth)
            started = True
        elif t.text == "}" and started:
            depth -= 1
    return max(best, 0)


def _count_types(tokens: Sequence[Token]) -> int:
    toks = [t for t in tokens if t.kind not in TRIVIA]
    n = 0
    for i, t in enumerate(toks):
        if i + 1 >= len(toks) or toks[i + 1].kind is not TokenKind.IDENTIFIER:
            continue
        if i and toks[i - 1].text in (".", ":", ","):
            continue
        if (t.kind is TokenKind.KEYWORD and t.text in _TYPE_DECL) or (
                t.kind is TokenKind.IDENTIFIER and t.text == "record"):
            n += 1
    return n


def file_metrics(sf: SourceFile) -> tuple[FileMetrics, list[MethodMetrics]]:
    code_lines: set[int] = set()
    comment_lines: set[int] = set()
    for t in sf.tokens:
        lines = range(t.line, t.end_line + 1)
        if t.kind in COMMENTS:
            comment_lines.update(lines)
        elif t.kind not in TRIVIA:
            code_lines.update(lines)
    units = sf.units
    methods = []
    body_statements = 0
    for span in sf.method_spans:
        first, last = units[span.start], units[span.stop - 1]
        toks = sf.tokens[first.token_start:last.token_stop]
        statements = sum(1 for u in units[span.start + 1:span.stop] if u.normalized_text != "}")
        body_statements += statements
        methods.append(MethodMetrics(sf.path, span.name, first.start_line,
                                     cyclomatic(toks, sf.language), nesting_depth(toks), statements))
    fm = FileMetrics(sf.path, len(sf.lines), len(code_lines), len(comment_lines),
                     _count_types(sf.tokens), len(methods), body_statements, sf.has_lexer_errors)
    return fm, methods


def compute_profile(corpus) -> MetricsProfile:
    corpus = check_corpus(corpus)
    files, methods = [], []
    for sf in corpus.files:
        fm, mm = file_metrics(sf)
        files.append(fm)
        methods.extend(mm)
    return MetricsProfile(sum(f.loc for f in files), sum(f.sloc for f in files),
                          sum(f.comment_lines for f in files), sum(f.n_types for f in files),
                          len(methods), sum(f.n_statements for f in files), methods, files)


# --------------------------------------------------------------------------
# thresholds

class Op(str, enum.Enum):
    GT = "gt"
    GE = "ge"
    LT = "lt"
    LE = "le"

    def __call__(self, a, b) -> bool:
        return getattr(operator, self.value)(a, b)


class Scope(str, enum.Enum):
    METHOD = "Method"
    FILE = "File"
    CORPUS = "Corpus"


METHOD_METRICS = {"cc", "depth", "statements"}
FILE_METRICS = {"loc", "sloc", "comment_lines", "comment_ratio", "n_types", "n_methods", "n_statements"}
CORPUS_METRICS = FILE_METRICS | {"max_cyclomatic", "max_nested_depth"}
ALL_METRICS = METHOD_METRICS | CORPUS_METRICS


@dataclass(frozen=True)
class Threshold:
    """A condition that counts as a violation when it holds, e.g. ``cc > 10``."""

    metric: str
    op: Op
    value: float
    scope: Scope = Scope.METHOD

    def __post_init__(self) -> None:
        object.__setattr__(self, "op", Op(self.op))
        object.__setattr__(self, "scope", Scope(self.scope))
        valid = {Scope.METHOD: METHOD_METRICS, Scope.FILE: FILE_METRICS, Scope.CORPUS: CORPUS_METRICS}
        if self.metric not in valid[self.scope]:
            raise ConfigError(f"unknown {self.scope.value.lower()} metric {self.metric!r}; "
                              f"valid: {', '.join(sorted(valid[self.scope]))}")

    @classmethod
    def parse(cls, text: str) -> "Threshold":
        """``metric:op:value[:scope]``, e.g. ``cc:gt:10`` or ``loc:gt:500:file``."""
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ConfigError(f"threshold {text!r} is not metric:op:value[:scope]")
        metric, op, value = parts[:3]
        try:
            op_ = Op(op.lower())
        except ValueError:
            raise ConfigError(f"unknown comparator {op!r}; valid: gt, ge, lt, le") from None
        if len(parts) == 4:
            scope = Scope(parts[3].capitalize())
        else:
            scope = Scope.METHOD if metric in METHOD_METRICS else Scope.CORPUS
        return cls(metric, op_, float(value), scope)

    def __str__(self) -> str:
        v = int(self.value) if float(self.value).is_integer() else self.value
        return f"{self.metric}:{self.op.value}:{v}:{self.scope.value.lower()}"


@dataclass(frozen=True)
class ThresholdViolation:
    threshold: Threshold
    subject: str
    observed: float

    def to_dict(self) -> dict:
        return {"threshold": str(self.threshold), "subject": self.subject, "observed": self.observed}


def check_thresholds(profile: MetricsProfile, thresholds: Iterable["Threshold | str"]
                     ) -> tuple[list[ThresholdViolation], dict[str, int]]:
    """Violation records plus the violation count per threshold."""
    out: list[ThresholdViolation] = []
    counts: dict[str, int] = {}
    for th in thresholds:
        th = Threshold.parse(th) if isinstance(th, str) else th
        before = len(out)
        if th.scope is Scope.METHOD:
            for m in profile.per_method:
                v = getattr(m, th.metric)
                if th.op(v, th.value):
                    out.append(ThresholdViolation(th, m.name, v))
        elif th.scope is Scope.FILE:
            for f in profile.per_file:
                v = getattr(f, th.metric)
                if th.op(v, th.value):
                    out.append(ThresholdViolation(th, f.file, v))
        else:
            v = profile.value(th.metric)
            if th.op(v, th.value):
                out.append(ThresholdViolation(th, "<corpus>", v))
        counts[str(th)] = len(out) - before
    return out, counts


class MetricsProfiler(BaseEstimator):
    def __init__(self, thresholds=()):
        self.thresholds = thresholds

    def fit(self, X, y=None):
        self.profile_ = compute_profile(X)
        self.violations_, self.threshold_counts_ = check_thresholds(self.profile_, self.thresholds)
        return self

    def transform(self, X=None):
        check_is_fitted(self, "profile_")
        return self.profile_.to_dict()

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()
