"""Project configuration, multi-version runs, quality gates and report emission."""

from __future__ import annotations

import enum
import hashlib
import html
import json
import logging
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from jsonschema import ValidationError

from . import __version__
from .architecture import ReflexionModel, analyse_architecture
from .clones import (CloneConfig, CloneReport, cloned_unit_count, detect_clones, detect_gapped_clones,
                     scoped_coverage, trend_of)
from .code_metrics import Threshold, check_thresholds, compute_profile
from .findings import (FindingsFilter, RuleCatalog, RuleSelector, SelectorMode, import_findings,
                       read_marks, select_and_filter, summarize)
from .quality_model import QualityModelSpec, collect_measurements, evaluate, load_demo_model, load_model
from .ranking import SystemResult
from .schemas import validate
from .source_model import Corpus, ExclusionFilter, Language, load_corpus

log = logging.getLogger(__name__)

CONFIG_ENV = "QUASTAT_CONFIG"


class ConfigError(ValueError):
    pass


# --------------------------------------------------------------------------
# schemas and serialisation

def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def file_digest(path: "str | Path | None") -> str:
    if path is None:
        return ""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def content_hash(*parts: str) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode("utf-8"))
        h.update(b"\0")
    return h.hexdigest()


def _meta(label: str, digest: str) -> dict:
    return {"version": label, "content_hash": digest, "tool_version": __version__}


# --------------------------------------------------------------------------
# configuration

class GateAction(str, enum.Enum):
    FAIL = "Fail"
    WARN = "Warn"


_COMPARATORS = {
    "<": lambda a, b: a < b, "<=": lambda a, b: a <= b, ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b, "==": lambda a, b: a == b, "!=": lambda a, b: a != b,
}
_GATE_RX = re.compile(r"^\s*(?P<metric>[\w.]+(?:\([^)]*\))?)\s*(?P<cmp><=|>=|==|!=|<|>|≤|≥)\s*"
                      r"(?P<bound>[-+]?\d+(?:\.\d+)?)\s*$")


@dataclass(frozen=True)
class QualityGate:
    """Passes when ``metric comparator bound`` holds; otherwise yields ``action``."""

    id: str
    metric: str
    comparator: str
    bound: float
    action: GateAction = GateAction.FAIL
    scope: str | None = None

    def __post_init__(self) -> None:
        cmp = {"≤": "<=", "≥": ">="}.get(self.comparator, self.comparator)
        if cmp not in _COMPARATORS:
            raise ConfigError(f"gate {self.id!r}: unknown comparator {self.comparator!r}")
        object.__setattr__(self, "comparator", cmp)
        object.__setattr__(self, "action", GateAction(self.action))

    @classmethod
    def parse(cls, text: str, id: str | None = None, action: str = "Fail",
              scope: str | None = None) -> "QualityGate":
        m = _GATE_RX.match(text)
        if not m:
            raise ConfigError(f"cannot parse gate condition {text!r}")
        return cls(id or text.strip(), m["metric"], m["cmp"], float(m["bound"]), GateAction(action), scope)

    @classmethod
    def from_dict(cls, d: Mapping) -> "QualityGate":
        if "condition" in d:
            return cls.parse(d["condition"], d.get("id"), d.get("action", "Fail"), d.get("scope"))
        return cls(d.get("id", d["metric"]), d["metric"], d["comparator"], float(d["bound"]),
                   GateAction(d.get("action", "Fail")), d.get("scope"))

    @property
    def condition(self) -> str:
        b = int(self.bound) if float(self.bound).is_integer() else self.bound
        return f"{self.metric} {self.comparator} {b}"


@dataclass
class FindingsConfig:
    catalog: Path | None = None
    files: dict[str, Path] = field(default_factory=dict)
    default_file: Path | None = None
    critical: Path | None = None
    suppressed: Path | None = None
    selector: RuleSelector = field(default_factory=RuleSelector)
    filter: FindingsFilter = field(default_factory=FindingsFilter)

    def file_for(self, label: str) -> Path | None:
        return self.files.get(label, self.default_file)


@dataclass
class ProjectConfig:
    name: str
    versions: list[tuple[str, Path]]
    language: Language = Language.JAVA
    exclusion: ExclusionFilter | None = None
    clones: CloneConfig = field(default_factory=CloneConfig)
    gapped: CloneConfig | None = None
    thresholds: list[Threshold] = field(default_factory=list)
    reflexion_model: Path | None = None
    findings: FindingsConfig | None = None
    quality_model: Path | str | None = None
    manual_measures: dict[str, float] = field(default_factory=dict)
    gates: list[QualityGate] = field(default_factory=list)
    base_dir: Path = Path(".")

    def __post_init__(self) -> None:
        if not self.versions:
            raise ConfigError("configuration needs at least one version")
        labels = [v for v, _ in self.versions]
        if len(set(labels)) != len(labels):
            raise ConfigError("version labels must be unique")

    def check_paths(self) -> list[str]:
        problems = []
        for label, root in self.versions:
            if not root.is_dir():
                problems.append(f"version {label}: source root {root} does not exist")
        paths = [self.reflexion_model]
        if isinstance(self.quality_model, Path):
            paths.append(self.quality_model)
        if self.findings:
            paths += [self.findings.catalog, self.findings.critical, self.findings.suppressed,
                      self.findings.default_file, *self.findings.files.values()]
        problems += [f"missing file {p}" for p in paths if p is not None and not p.exists()]
        return problems

    @classmethod
    def from_dict(cls, d: Mapping, base_dir: "str | Path" = ".") -> "ProjectConfig":
        try:
            validate(d, "config")
        except ValidationError as exc:
            raise ConfigError(f"invalid configuration: {exc.message}") from None
        base = Path(base_dir)

        def path(p):
            return None if p is None else (base / p)

        versions = [(v["label"], path(v["root"])) for v in d["versions"]]
        ex = d.get("exclude")
        exclusion = ExclusionFilter(list(ex["patterns"]), ex.get("rationale", "")) if ex else None
        c = d.get("clones", {})
        clones = CloneConfig(c.get("min_length", 10), False, c.get("max_gaps", 1), c.get("max_gap_ratio", 0.30))
        gapped = (CloneConfig(clones.min_length, True, clones.max_gaps_per_clone, clones.max_gap_ratio)
                  if c.get("gapped", False) else None)
        findings = None
        if "findings" in d:
            f = d["findings"]
            files = f.get("files", {})
            sel = f.get("selector", {})
            mode = sel.get("mode", "SelectedCategories" if sel.get("categories") else
                           "SelectedRules" if sel.get("rules") else "AllRules")
            flt = f.get("filter", {})
            findings = FindingsConfig(
                path(f.get("catalog")),
                {k: path(v) for k, v in files.items()} if isinstance(files, Mapping) else {},
                path(files) if isinstance(files, str) else path(f.get("file")),
                path(f.get("critical")), path(f.get("suppressed")),
                RuleSelector(SelectorMode(mode), list(sel.get("categories", [])), list(sel.get("rules", [])),
                             list(sel.get("exclusions", []))),
                FindingsFilter(flt.get("min_severity", 1), flt.get("min_confidence", 0.0), set(),
                               list(flt.get("path_excludes", []))))
        qm = d.get("quality_model")
        qm = qm if qm in (None, "demo") else path(qm)
        return cls(d["name"], versions, Language.parse(d.get("language", "java")), exclusion, clones, gapped,
                   [Threshold.parse(t) for t in d.get("thresholds", [])], path(d.get("reflexion_model")),
                   findings, qm, dict(d.get("manual_measures", {})),
                   [QualityGate.from_dict(g) for g in d.get("gates", [])], base)

    @classmethod
    def load(cls, path: "str | Path") -> "ProjectConfig":
        p = Path(path)
        return cls.from_dict(json.loads(p.read_text()), p.parent)


def resolve_config_path(cli_value: "str | None") -> Path | None:
    if cli_value:
        return Path(cli_value)
    env = os.environ.get(CONFIG_ENV)
    return Path(env) if env else None


# --------------------------------------------------------------------------
# per-tool reports (shared by the subcommands and the pipeline)

def metrics_report(corpus: Corpus, thresholds: Sequence[Threshold], label: str) -> dict:
    profile = compute_profile(corpus)
    violations, counts = check_thresholds(profile, thresholds)
    d = profile.to_dict()
    d["thresholds"] = {"violations": [v.to_dict() for v in violations], "counts": counts}
    d["meta"] = _meta(label, corpus.content_hash())
    d["skipped_files"] = [{"path": p, "reason": r} for p, r in corpus.skipped]
    return d


def clone_report(corpus: Corpus, config: CloneConfig, label: str) -> dict:
    report = detect_gapped_clones(corpus, config=config) if config.gapped else detect_clones(corpus, config)
    d = report.to_dict()
    d["meta"] = _meta(label, content_hash(corpus.content_hash(), "gapped" if config.gapped else "conventional",
                                          json.dumps(d["config"], sort_keys=True)))
    return d


def arch_report(corpus: Corpus, model_path: Path, label: str) -> dict:
    model = ReflexionModel.load(model_path)
    d = analyse_architecture(corpus, model).to_dict()
    d["meta"] = _meta(label, content_hash(corpus.content_hash(), file_digest(model_path)))
    return d


def findings_report(fc: FindingsConfig, path: Path, loc: int, label: str,
                    corpus_files: Iterable[str] | None = None, corpus_hash: str = "") -> dict:
    catalog = RuleCatalog.load(fc.catalog) if fc.catalog else RuleCatalog()
    found, warnings = import_findings(path, catalog, corpus_files)
    flt = fc.filter
    if fc.suppressed:
        flt = FindingsFilter(flt.min_severity, flt.min_confidence, read_marks(fc.suppressed),
                             list(flt.path_excludes))
    kept, removed = select_and_filter(found, fc.selector, flt)
    marks = read_marks(fc.critical) if fc.critical else set()
    report = summarize(kept, loc, marks)
    report.removed = removed
    report.warnings = warnings + report.warnings
    d = report.to_dict()
    d["imported"] = len(found)
    d["meta"] = _meta(label, content_hash(corpus_hash, file_digest(path), file_digest(fc.catalog),
                                          file_digest(fc.critical), file_digest(fc.suppressed)))
    return d


def assessment_report(qm: "Path | str | None", label: str, clones=None, findings=None, metrics=None,
                      arch=None, manual: Mapping | None = None) -> dict:
    model = load_demo_model() if qm in (None, "demo") else load_model(qm)
    measurements = collect_measurements(model, clones, findings, metrics, arch, manual=manual)
    d = evaluate(model, measurements).to_dict()
    d["model"] = model.name
    inputs = [dumps(x) if x is not None else "-" for x in (clones, findings, metrics, arch)]
    d["meta"] = _meta(label, content_hash(*inputs, "demo" if qm in (None, "demo") else file_digest(qm)))
    return d


def file_samples(model: QualityModelSpec, clones: Mapping, findings: Sequence, metrics: Mapping,
                 arch: Mapping | None = None, marks: Iterable[str] = ()) -> list[dict]:
    """Per-file measurement vectors, the raw material for threshold calibration.

    Each source file is treated as a system of its own: the corpus-wide
    reports are cut down to that file and run through the usual measurement
    collection. ``findings`` holds :class:`Finding` objects.
    """
    report = CloneReport.from_dict(clones)
    marks = set(marks)
    by_file: dict[str, list] = {}
    for f in findings:
        by_file.setdefault(f.file, []).append(f)
    out = []
    for fm in metrics["per_file"]:
        path = fm["file"]
        units = report.file_units.get(path, 0)
        clone_d = {"analysed_units": units, "cloned_units": cloned_unit_count(report.classes, [path]),
                   "blow_up": 100.0, "classes": []}
        mine = by_file.get(path, [])
        find_d = summarize(mine, fm["loc"], marks).to_dict()
        metric_d = dict(fm, per_method=[m for m in metrics["per_method"] if m["file"] == path])
        arch_d = None
        if arch is not None:
            pairs = {(v["from"], v["to"]) for v in arch["violations"] if v["file"] == path}
            arch_d = {"summary": {"class_violations": len(pairs)}}
        vals = collect_measurements(model, clone_d, find_d, metric_d, arch_d)
        out.append({"file": path, **vals})
    return out


# --------------------------------------------------------------------------
# gates

class Verdict(str, enum.Enum):
    PASS = "Pass"
    WARN = "Warn"
    FAIL = "Fail"
    ERROR = "Error"


_SHORTHANDS = {
    "clone_coverage": ("clones", "unit_coverage"),
    "blow_up": ("clones", "blow_up"),
    "gapped_coverage": ("gapped", "unit_coverage"),
    "findings_density": ("findings", "density_per_kloc"),
    "critical_findings": ("findings", "critical_count"),
    "findings_total": ("findings", "total"),
    "arch_class_violations": ("arch", "summary", "class_violations"),
    "arch_component_violations": ("arch", "summary", "component_violations"),
    "max_cyclomatic": ("metrics", "max_cyclomatic"),
    "max_nested_depth": ("metrics", "max_nested_depth"),
    "grade": ("assessment", "overall_grade"),
}


class GateError(LookupError):
    pass


def _dig(obj, path: Sequence[str]):
    for key in path:
        if isinstance(obj, Mapping) and key in obj:
            obj = obj[key]
        else:
            raise GateError(f"metric path {'.'.join(path)} does not resolve")
    if obj is None or isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise GateError(f"metric path {'.'.join(path)} is not numeric")
    return obj


def resolve_metric(artifact: Mapping, metric: str, scope: str | None = None) -> float:
    reports = artifact.get("reports", {})
    m = re.fullmatch(r"grade\((.+)\)", metric)
    if m:
        node = m.group(1).strip()
        a = reports.get("assessment")
        if a is None:
            raise GateError("no assessment report")
        for section in ("characteristics", "factors"):
            for key, res in a[section].items():
                if key.lower() == node.lower():
                    return _dig(res, ["grade"])
        raise GateError(f"no quality node {node!r}")
    if metric in ("clone_coverage", "gapped_coverage") and scope:
        section = "clones" if metric == "clone_coverage" else "gapped"
        if reports.get(section) is None:
            raise GateError(f"no {section} report")
        return round(scoped_coverage(CloneReport.from_dict(reports[section]), scope), 1)
    path = _SHORTHANDS.get(metric)
    if path is None:
        path = tuple(metric.split("."))
    if reports.get(path[0]) is None:
        raise GateError(f"no {path[0]} report")
    return _dig(reports, path)


def evaluate_gates(artifact: Mapping, gates: Sequence[QualityGate]) -> list[dict]:
    out = []
    for g in gates:
        try:
            observed = resolve_metric(artifact, g.metric, g.scope)
        except GateError as exc:
            out.append({"id": g.id, "condition": g.condition, "scope": g.scope, "verdict": Verdict.ERROR.value,
                        "observed": None, "message": str(exc)})
            continue
        ok = _COMPARATORS[g.comparator](observed, g.bound)
        verdict = Verdict.PASS if ok else Verdict(g.action.value)
        out.append({"id": g.id, "condition": g.condition, "scope": g.scope, "verdict": verdict.value,
                    "observed": observed, "message": ""})
    return out


EXIT_OK, EXIT_WARN, EXIT_FAIL, EXIT_ERROR = 0, 1, 2, 3


def exit_code(artifacts: Sequence[Mapping]) -> int:
    code = EXIT_OK
    for a in artifacts:
        if a.get("errors"):
            code = max(code, EXIT_ERROR)
        for v in a.get("gates", []):
            code = max(code, {"Pass": EXIT_OK, "Warn": EXIT_WARN, "Fail": EXIT_FAIL, "Error": EXIT_ERROR}[v["verdict"]])
    return code


# --------------------------------------------------------------------------
# pipeline

def system_result(name: str, label: str, reports: Mapping) -> dict:
    clones, findings, arch, assess = (reports.get(k) for k in ("clones", "findings", "arch", "assessment"))
    return SystemResult(
        f"{name}@{label}",
        clones["unit_coverage"] if clones else None,
        findings["density_per_kloc"] if findings else None,
        findings["critical_count"] if findings else None,
        arch["summary"]["class_violations"] if arch else None,
        assess["overall_grade"] if assess else None,
    ).to_dict()


def run_version(config: ProjectConfig, label: str, root: Path) -> dict:
    reports: dict[str, dict | None] = {}
    skipped: list[str] = []
    errors: list[str] = []
    artifact = {"project": config.name, "version": label, "reports": reports, "skipped": skipped,
                "errors": errors}
    try:
        corpus = load_corpus(root, config.exclusion, config.language)
    except OSError as exc:
        errors.append(f"corpus: {exc}")
        artifact.update(content_hash="", gates=[], system_result=None)
        return artifact
    artifact["content_hash"] = corpus.content_hash()

    def step(name: str, fn):
        try:
            reports[name] = fn()
        except Exception as exc:  # one module failing must not sink the others
            log.error("%s %s: %s", label, name, exc)
            errors.append(f"{name}: {exc}")
            reports[name] = None

    step("metrics", lambda: metrics_report(corpus, config.thresholds, label))
    step("clones", lambda: clone_report(corpus, config.clones, label))
    if config.gapped is not None:
        step("gapped", lambda: clone_report(corpus, config.gapped, label))
    else:
        skipped.append("gapped")
    if config.reflexion_model is not None:
        step("arch", lambda: arch_report(corpus, config.reflexion_model, label))
    else:
        skipped.append("arch")
    fpath = config.findings.file_for(label) if config.findings else None
    if fpath is not None:
        step("findings", lambda: findings_report(config.findings, fpath, corpus.loc, label,
                                                 [f.path for f in corpus.files], corpus.content_hash()))
    else:
        skipped.append("findings")
    if config.quality_model is not None:
        step("assessment", lambda: assessment_report(
            config.quality_model, label, reports.get("clones"), reports.get("findings"),
            reports.get("metrics"), reports.get("arch"), config.manual_measures))
    else:
        skipped.append("assessment")
    for k in [k for k, v in reports.items() if v is None]:
        del reports[k]
    artifact["gates"] = evaluate_gates(artifact, config.gates)
    artifact["system_result"] = system_result(config.name, label, reports)
    return artifact


def run_pipeline(config: ProjectConfig) -> list[dict]:
    """One artifact per configured version, in configuration order."""
    return [run_version(config, label, root) for label, root in config.versions]


TREND_SOURCES = {
    "clone_coverage": ("clones", "unit_coverage"),
    "blow_up": ("clones", "blow_up"),
    "findings_density": ("findings", "density_per_kloc"),
    "critical_findings": ("findings", "critical_count"),
    "arch_class_violations": ("arch", "summary", "class_violations"),
    "max_cyclomatic": ("metrics", "max_cyclomatic"),
    "overall_grade": ("assessment", "overall_grade"),
}


def trends(artifacts: Sequence[Mapping]) -> dict:
    """Trends across consecutive versions for every metric present in all of them."""
    if len(artifacts) < 2:
        return {}
    out = {}
    for metric, path in TREND_SOURCES.items():
        try:
            values = [_dig(a["reports"], path) for a in artifacts]
        except GateError:
            continue
        out[metric] = trend_of(values, metric).to_dict()
    return out


def index_document(artifacts: Sequence[Mapping], files: Sequence[str]) -> dict:
    return {
        "project": artifacts[0]["project"] if artifacts else "",
        "versions": [a["version"] for a in artifacts],
        "artifacts": list(files),
        "trends": trends(artifacts),
        "exit_code": exit_code(artifacts),
        "gates": {a["version"]: [g["verdict"] for g in a["gates"]] for a in artifacts},
    }


def _safe(label: str) -> str:
    return re.sub(r"[^\w.-]+", "_", label)


def emit_reports(artifacts: Sequence[Mapping], out_dir: "str | Path",
                 formats: Iterable[str] = ("json",)) -> list[Path]:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    if not os.access(out, os.W_OK):
        raise OSError(f"output directory {out} is not writable")
    formats = list(formats)
    written: list[Path] = []
    names = [f"{_safe(a['version'])}.json" for a in artifacts]
    if "json" in formats:
        for a, name in zip(artifacts, names):
            p = out / name
            p.write_text(dumps(a))
            written.append(p)
    index = index_document(artifacts, names)
    if "html" in formats:
        for a in artifacts:
            p = out / f"{_safe(a['version'])}.html"
            p.write_text(render_artifact_html(a))
            written.append(p)
        p = out / "index.html"
        p.write_text(render_index_html(artifacts, index))
        written.append(p)
    if "json" in formats:
        p = out / "index.json"
        p.write_text(dumps(index))
        written.append(p)
    return written


# --------------------------------------------------------------------------
# static HTML

_CSS = ("body{font-family:sans-serif;margin:2em}table{border-collapse:collapse;margin:1em 0}"
        "td,th{border:1px solid #999;padding:.25em .6em;text-align:left}th{background:#eee}"
        ".Pass{color:#070}.Warn{color:#a60}.Fail,.Error{color:#b00}")
_ARROWS = {"up": "&#8593;", "down": "&#8595;", "flat": "&#8594;"}


def _e(x) -> str:
    return html.escape("" if x is None else str(x))


def _table(headers: Sequence[str], rows: Iterable[Sequence]) -> str:
    head = "".join(f"<th>{_e(h)}</th>" for h in headers)
    body = "".join("<tr>" + "".join(f"<td>{c}</td>" for c in row) + "</tr>\n" for row in rows)
    return f"<table>\n<tr>{head}</tr>\n{body}</table>\n"


def _page(title: str, body: str) -> str:
    return (f"<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>{_e(title)}</title>"
            f"<style>{_CSS}</style></head>\n<body>\n<h1>{_e(title)}</h1>\n{body}</body></html>\n")


def _fmt(v, digits: int) -> str:
    return "" if v is None else f"{v:.{digits}f}"


def render_artifact_html(a: Mapping) -> str:
    r = a["reports"]
    parts = []
    c = r.get("clones")
    if c:
        rows = [["conventional", c["analysed_units"], c["cloned_units"], _fmt(c["blow_up"], 1),
                 _fmt(c["unit_coverage"], 1), len(c["classes"])]]
        g = r.get("gapped")
        if g:
            rows.append(["gapped", g["analysed_units"], g["cloned_units"], _fmt(g["blow_up"], 1),
                         _fmt(g["unit_coverage"], 1), len(g["classes"])])
        parts.append("<h2>Clones</h2>\n" + _table(
            ["Kind", "Analysed units", "Cloned units", "Blow-up %", "Coverage %", "Classes"], rows))
    arch = r.get("arch")
    if arch:
        s = arch["summary"]
        parts.append("<h2>Architecture conformance</h2>\n" + _table(
            ["Violating component relationships", "Violating class relationships", "Tolerated", "Coverage gaps"],
            [[s["component_violations"], s["class_violations"], s["tolerated"], s["coverage_gaps"]]]))
        if arch["violations"]:
            parts.append(_table(["From", "To", "Components", "Kind", "Taxonomy", "Location"],
                                [[_e(v["from"]), _e(v["to"]), _e(f"{v['from_component']} -> {v['to_component']}"),
                                  _e(v["kind"]), _e(v["taxonomy"]), _e(f"{v['file']}:{v['line']}")]
                                 for v in arch["violations"]]))
    f = r.get("findings")
    if f:
        parts.append("<h2>Findings</h2>\n" + _table(
            ["Total", "Per kLoC", "Critical", "Bug", "Smell", "Pedantry"],
            [[f["total"], _fmt(f["density_per_kloc"], 2), f["critical_count"],
              f["per_classification"].get("Bug", 0), f["per_classification"].get("Smell", 0),
              f["per_classification"].get("Pedantry", 0)]]))
    m = r.get("metrics")
    if m:
        parts.append("<h2>Metrics</h2>\n" + _table(
            ["LoC", "SLoC", "Comment ratio", "Types", "Methods", "Statements", "Max CC", "Max depth"],
            [[m["loc"], m["sloc"], _fmt(m["comment_ratio"], 2), m["n_types"], m["n_methods"],
              m["n_statements"], m["max_cyclomatic"], m["max_nested_depth"]]]))
    q = r.get("assessment")
    if q:
        rows = [[_e(k), _fmt(v["grade"], 1), _e("-".join(_fmt(x, 1) for x in v["grade_interval"]))]
                for k, v in q["characteristics"].items()]
        parts.append("<h2>Quality assessment</h2>\n" + _table(["Characteristic", "Grade", "Interval"], rows))
    if a.get("gates"):
        parts.append("<h2>Quality gates</h2>\n" + _table(
            ["Gate", "Condition", "Observed", "Verdict"],
            [[_e(g["id"]), _e(g["condition"]), _e(g["observed"]),
              f"<span class=\"{g['verdict']}\">{g['verdict']}</span>"] for g in a["gates"]]))
    if a.get("skipped") or a.get("errors"):
        parts.append("<h2>Notes</h2>\n<ul>" + "".join(f"<li>skipped: {_e(s)}</li>" for s in a["skipped"])
                     + "".join(f"<li>error: {_e(e)}</li>" for e in a["errors"]) + "</ul>\n")
    return _page(f"{a['project']} {a['version']}", "".join(parts))


def render_index_html(artifacts: Sequence[Mapping], index: Mapping) -> str:
    parts = []
    rows = []
    for a in artifacts:
        v = a["version"]
        verdicts = ", ".join(g["verdict"] for g in a["gates"]) or "none"
        rows.append([f"<a href=\"{_e(_safe(v))}.html\">{_e(v)}</a>", _e(verdicts)])
    parts.append("<h2>Versions</h2>\n" + _table(["Version", "Gates"], rows))
    if index["trends"]:
        trows = []
        for metric, t in index["trends"].items():
            cells = [_e(metric)] + [_e(x) for x in t["values"]]
            cells.append(" ".join(_ARROWS[s] for s in t["steps"]) + f" {_e(t['direction'])}")
            trows.append(cells)
        parts.append("<h2>Trends</h2>\n" + _table(["Metric", *index["versions"], "Trend"], trows))
    return _page(f"{index['project']} quality report", "".join(parts))
