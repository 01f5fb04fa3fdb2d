"""Bug-pattern findings: ingestion, rule catalog, selection, filtering, statistics."""

from __future__ import annotations

import enum
import hashlib
import json
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from jsonschema import ValidationError
from sklearn.base import BaseEstimator

from .schemas import validate
from .validation import check_fraction, check_is_fitted, check_ordinal

log = logging.getLogger(__name__)


class Classification(str, enum.Enum):
    BUG = "Bug"
    SMELL = "Smell"
    PEDANTRY = "Pedantry"

    @classmethod
    def parse(cls, value: str) -> "Classification":
        for c in cls:
            if c.value.lower() == str(value).lower():
                return c
        raise ValueError(f"unknown classification {value!r}")


class SelectorMode(str, enum.Enum):
    ALL_RULES = "AllRules"
    SELECTED_CATEGORIES = "SelectedCategories"
    SELECTED_RULES = "SelectedRules"


@dataclass(frozen=True)
class RuleDescriptor:
    rule_id: str
    tool: str
    category: str = "uncategorized"
    classification: Classification = Classification.SMELL
    default_severity: int = 3
    description: str = ""

    @property
    def key(self) -> tuple[str, str]:
        return (self.tool, self.rule_id)


class RuleCatalog:
    """Rules keyed by (tool, rule_id), plus per-tool severity mapping tables."""

    def __init__(self, rules: Iterable[RuleDescriptor] = (), severity_maps: Mapping | None = None):
        self.rules: dict[tuple[str, str], RuleDescriptor] = {}
        for r in rules:
            if r.key in self.rules:
                raise ValueError(f"duplicate rule {r.tool}/{r.rule_id}")
            check_ordinal(r.default_severity, "default_severity")
            self.rules[r.key] = r
        self.severity_maps = {tool: {str(k): int(v) for k, v in m.items()}
                              for tool, m in (severity_maps or {}).items()}

    def __contains__(self, key) -> bool:
        return key in self.rules

    def __len__(self) -> int:
        return len(self.rules)

    def get(self, tool: str, rule_id: str) -> RuleDescriptor | None:
        return self.rules.get((tool, rule_id))

    def normalize_severity(self, tool: str, raw) -> int:
        table = self.severity_maps.get(tool)
        if table is not None and str(raw) in table:
            return table[str(raw)]
        return int(raw)

    @classmethod
    def from_obj(cls, obj) -> "RuleCatalog":
        if isinstance(obj, Mapping):
            rules, maps = obj.get("rules", []), obj.get("severity_maps", {})
        else:
            rules, maps = obj, {}
        return cls([RuleDescriptor(r["rule_id"], r["tool"], r.get("category", "uncategorized"),
                                   Classification.parse(r.get("classification", "Smell")),
                                   int(r.get("default_severity", 3)), r.get("description", ""))
                    for r in rules], maps)

    @classmethod
    def load(cls, path: "str | Path") -> "RuleCatalog":
        obj = json.loads(Path(path).read_text())
        try:
            validate(obj, "rule_catalog")
        except ValidationError as exc:
            raise ValueError(f"{path}: invalid rule catalog: {exc.message}") from None
        return cls.from_obj(obj)


@dataclass(frozen=True)
class Finding:
    tool: str
    rule_id: str
    file: str
    line: int
    message: str
    severity: int = 3
    confidence: float = 1.0
    classification: Classification = Classification.SMELL
    category: str = "uncategorized"
    in_corpus: bool = True

    def __post_init__(self) -> None:
        check_ordinal(self.severity, "severity")
        check_fraction(self.confidence, "confidence")

    @property
    def rule(self) -> tuple[str, str]:
        return (self.tool, self.rule_id)

    @property
    def fingerprint(self) -> str:
        return fingerprint(self.rule_id, self.file, self.message)

    def to_dict(self) -> dict:
        return {"tool": self.tool, "rule_id": self.rule_id, "file": self.file, "line": self.line,
                "message": self.message, "severity": self.severity, "confidence": self.confidence,
                "classification": self.classification.value, "category": self.category,
                "fingerprint": self.fingerprint}


def normalize_path(path: str) -> str:
    p = str(path).replace("\\", "/")
    p = re.sub(r"/+", "/", p)
    while p.startswith("./"):
        p = p[2:]
    return p


def fingerprint(rule_id: str, path: str, message: str) -> str:
    """Run-stable identity of a finding; line numbers are deliberately left out."""
    msg = " ".join(str(message).split())
    payload = "\x1f".join((rule_id, normalize_path(path), msg))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


_REQUIRED = ("tool", "rule_id", "file", "line")


def import_findings(path, catalog: RuleCatalog | None = None,
                    corpus_files: Iterable[str] | None = None) -> tuple[list[Finding], list[str]]:
    """Read a JSON-Lines findings file.

    Returns the findings and the warnings raised while reading. Malformed
    lines are skipped; an unreadable file raises ``OSError``.
    """
    catalog = catalog or RuleCatalog()
    known = {normalize_path(f) for f in corpus_files} if corpus_files is not None else None
    if isinstance(path, (str, Path)):
        text = Path(path).read_text(encoding="utf-8")
        lines = text.splitlines()
    else:
        lines = [ln.rstrip("\n") for ln in path]
    findings: list[Finding] = []
    warnings: list[str] = []
    unknown: set[tuple[str, str]] = set()
    for no, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            if not isinstance(obj, dict):
                raise ValueError("not an object")
            missing = [k for k in _REQUIRED if k not in obj]
            if missing:
                raise ValueError(f"missing {', '.join(missing)}")
            tool, rule_id = str(obj["tool"]), str(obj["rule_id"])
            desc = catalog.get(tool, rule_id)
            if desc is None:
                desc = RuleDescriptor(rule_id, tool)
                if (tool, rule_id) not in unknown:
                    unknown.add((tool, rule_id))
                    warnings.append(f"rule {tool}/{rule_id} not in catalog; classified as Smell")
            raw = obj.get("severity", desc.default_severity)
            file = normalize_path(obj["file"])
            finding = Finding(tool, rule_id, file, int(obj["line"]), str(obj.get("message", "")),
                              catalog.normalize_severity(tool, raw), float(obj.get("confidence", 1.0)),
                              desc.classification, desc.category,
                              known is None or file in known)
        except (ValueError, TypeError) as exc:
            warnings.append(f"line {no}: skipped ({exc})")
            continue
        if not finding.in_corpus:
            warnings.append(f"line {no}: file {finding.file} is not part of the corpus")
        findings.append(finding)
    for w in warnings:
        log.warning(w)
    return findings, warnings


@dataclass
class RuleSelector:
    mode: SelectorMode = SelectorMode.ALL_RULES
    categories: list[str] = field(default_factory=list)
    rules: list[str] = field(default_factory=list)
    exclusions: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.mode = SelectorMode(self.mode)
        if self.mode is SelectorMode.SELECTED_CATEGORIES and not self.categories:
            raise ValueError("SelectedCategories needs at least one category")
        if self.mode is SelectorMode.SELECTED_RULES and not self.rules:
            raise ValueError("SelectedRules needs at least one rule")

    def accepts(self, f: Finding) -> bool:
        if f.rule_id in self.exclusions or f"{f.tool}/{f.rule_id}" in self.exclusions:
            return False
        if self.mode is SelectorMode.SELECTED_CATEGORIES:
            return f.category.lower() in {c.lower() for c in self.categories}
        if self.mode is SelectorMode.SELECTED_RULES:
            return f.rule_id in self.rules or f"{f.tool}/{f.rule_id}" in self.rules
        return True


@dataclass
class FindingsFilter:
    min_severity: int = 1
    min_confidence: float = 0.0
    suppressed_fingerprints: set[str] = field(default_factory=set)
    path_excludes: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        check_ordinal(self.min_severity, "min_severity")
        check_fraction(self.min_confidence, "min_confidence")
        self._paths = [re.compile(p) for p in self.path_excludes]


STAGES = ("selector", "severity", "confidence", "path", "suppression")


def select_and_filter(findings: Sequence[Finding], selector: RuleSelector | None = None,
                      filter: FindingsFilter | None = None) -> tuple[list[Finding], dict[str, int]]:
    """Apply the selector, then severity, confidence, path and suppression filters."""
    selector = selector or RuleSelector()
    filter = filter or FindingsFilter()
    checks = (
        selector.accepts,
        lambda f: f.severity >= filter.min_severity,
        lambda f: f.confidence >= filter.min_confidence,
        lambda f: not any(p.search(f.file) for p in filter._paths),
        lambda f: f.fingerprint not in filter.suppressed_fingerprints,
    )
    removed = {}
    current = list(findings)
    for stage, keep in zip(STAGES, checks):
        kept = [f for f in current if keep(f)]
        removed[stage] = len(current) - len(kept)
        current = kept
    return current, removed


@dataclass
class FindingsReport:
    total: int
    per_rule: dict[str, int]
    per_classification: dict[str, int]
    density_per_kloc: float | None
    critical_count: int
    loc: int
    removed: dict[str, int] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    per_category: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"total": self.total, "per_rule": dict(sorted(self.per_rule.items())),
                "per_classification": dict(sorted(self.per_classification.items())),
                "density_per_kloc": self.density_per_kloc, "critical_count": self.critical_count,
                "per_category": dict(sorted(self.per_category.items())),
                "loc": self.loc, "removed": dict(self.removed), "warnings": list(self.warnings)}

    @classmethod
    def from_dict(cls, d: Mapping) -> "FindingsReport":
        return cls(d["total"], dict(d["per_rule"]), dict(d["per_classification"]),
                   d["density_per_kloc"], d["critical_count"], d["loc"], dict(d.get("removed", {})),
                   list(d.get("warnings", [])), dict(d.get("per_category", {})))


def density(total: int, loc: int) -> float | None:
    if loc <= 0:
        return None
    return round(1000 * total / loc, 2)


def summarize(findings: Sequence[Finding], corpus_loc: int,
              criticality_marks: Iterable[str] = ()) -> FindingsReport:
    marks = set(criticality_marks)
    per_rule = Counter(f"{f.tool}/{f.rule_id}" for f in findings)
    per_class = Counter(f.classification.value for f in findings)
    for c in Classification:
        per_class.setdefault(c.value, 0)
    warnings = []
    d = density(len(findings), corpus_loc)
    if d is None:
        warnings.append("corpus has no lines of code; density undefined")
        log.warning(warnings[-1])
    critical = sum(1 for f in findings if f.fingerprint in marks)
    per_category = Counter(f.category.lower() for f in findings)
    return FindingsReport(len(findings), dict(per_rule), dict(per_class), d, critical, corpus_loc,
                          warnings=warnings, per_category=dict(per_category))


def read_marks(path: "str | Path") -> set[str]:
    """Fingerprints listed one per line; ``#`` starts a comment."""
    out = set()
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.add(line)
    return out


class FindingsSelector(BaseEstimator):
    """Selector plus filter as an estimator; ``transform`` returns surviving findings."""

    def __init__(self, mode="AllRules", categories=(), rules=(), exclusions=(), min_severity=1,
                 min_confidence=0.0, suppressed=(), path_excludes=()):
        self.mode = mode
        self.categories = categories
        self.rules = rules
        self.exclusions = exclusions
        self.min_severity = min_severity
        self.min_confidence = min_confidence
        self.suppressed = suppressed
        self.path_excludes = path_excludes

    def fit(self, X=None, y=None):
        self.selector_ = RuleSelector(SelectorMode(self.mode), list(self.categories), list(self.rules),
                                      list(self.exclusions))
        self.filter_ = FindingsFilter(self.min_severity, self.min_confidence, set(self.suppressed),
                                      list(self.path_excludes))
        return self

    def transform(self, X):
        check_is_fitted(self, "selector_")
        kept, self.removed_ = select_and_filter(list(X), self.selector_, self.filter_)
        return kept
