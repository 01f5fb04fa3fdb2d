"""``quastat`` command line."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .clones import CloneConfig
from .code_metrics import Threshold
from .findings import FindingsFilter, RuleSelector, SelectorMode
from .pipeline import (EXIT_ERROR, EXIT_OK, FindingsConfig, ProjectConfig, arch_report, assessment_report,
                       clone_report, dumps, emit_reports, exit_code, findings_report, index_document,
                       metrics_report, render_artifact_html, render_index_html, resolve_config_path,
                       run_pipeline)
from .ranking import CRITERIA, compare_rankings, load_results, rank_all, text_matrix
from .source_model import ExclusionFilter, Language, load_corpus

log = logging.getLogger("quastat")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep exit code 2 free for failed gates
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _globals(suppress: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--config", default=d, help="project configuration JSON (default: $QUASTAT_CONFIG)")
    p.add_argument("--out", default=d, help="output directory (default: print to stdout)")
    p.add_argument("--format", choices=["json", "html"], default=d,
                   help="output format (default: json; html for report)")
    p.add_argument("--language", choices=[lang.value for lang in Language], default=d)
    p.add_argument("--exclude", action="append", default=d, metavar="REGEX",
                   help="exclude files whose path matches (repeatable)")
    p.add_argument("--label", default=d, help="version label recorded in reports")
    p.add_argument("-v", "--verbose", action="store_true", default=d if suppress else False)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quastat", parents=[_globals(False)],
                     description="Static quality analysis and quality-model assessment.")
    parser.add_argument("--version", action="version", version=f"quastat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = [_globals(True)]

    p = sub.add_parser("clones", parents=common, help="conventional or gapped clone detection")
    p.add_argument("root", nargs="?")
    p.add_argument("--min-length", type=int)
    p.add_argument("--gapped", action="store_true", default=None)
    p.add_argument("--max-gaps", type=int)
    p.add_argument("--max-gap-ratio", type=float)

    p = sub.add_parser("arch", parents=common, help="architecture conformance against a reflexion model")
    p.add_argument("root", nargs="?")
    p.add_argument("--model")

    p = sub.add_parser("findings", parents=common, help="import, filter and summarise tool findings")
    p.add_argument("--catalog")
    p.add_argument("--in", dest="input")
    p.add_argument("--categories", help="comma-separated rule categories to keep")
    p.add_argument("--rules", help="comma-separated rule ids to keep")
    p.add_argument("--min-severity", type=int)
    p.add_argument("--min-confidence", type=float)
    p.add_argument("--critical", help="file listing fingerprints of critical findings")
    p.add_argument("--suppressed", help="file listing fingerprints of confirmed false positives")
    p.add_argument("--loc", type=int, help="corpus size in lines (else taken from --root)")
    p.add_argument("--root")

    p = sub.add_parser("metrics", parents=common, help="size, complexity and nesting metrics")
    p.add_argument("root", nargs="?")
    p.add_argument("--threshold", action="append", metavar="METRIC:OP:VALUE[:SCOPE]")

    p = sub.add_parser("assess", parents=common, help="evaluate a quality model")
    p.add_argument("--model", help="quality model JSON (default: bundled demo model)")
    p.add_argument("--clones")
    p.add_argument("--findings")
    p.add_argument("--metrics")
    p.add_argument("--arch")
    p.add_argument("--manual", help="JSON object of manually supplied measure values")

    p = sub.add_parser("rank", parents=common, help="rank systems per criterion")
    p.add_argument("--in", dest="inputs", nargs="+", required=True)
    p.add_argument("--criteria", default=",".join(CRITERIA))
    p.add_argument("--text", action="store_true", help="print the rank matrix as text")

    sub.add_parser("run", parents=common, help="full pipeline over all configured versions")

    p = sub.add_parser("report", parents=common, help="render stored run artifacts")
    p.add_argument("--in", dest="input", required=True, help="directory holding run artifacts")
    return parser


def _load_config(args) -> ProjectConfig | None:
    path = resolve_config_path(getattr(args, "config", None))
    return ProjectConfig.load(path) if path else None


def _pick(cli, cfg):
    return cli if cli is not None else cfg


def _corpus(args, cfg: ProjectConfig | None, root: str | None):
    label = getattr(args, "label", None)
    if root is None:
        if cfg is None:
            raise UsageError("a source root is required (or a configuration with versions)")
        versions = dict(cfg.versions)
        if label is None:
            label, root_path = cfg.versions[0]
        elif label in versions:
            root_path = versions[label]
        else:
            raise UsageError(f"no configured version {label!r}")
    else:
        root_path = Path(root)
        if label is None and cfg is not None:
            label = next((v for v, r in cfg.versions if r.resolve() == root_path.resolve()), None)
    language = Language.parse(_pick(getattr(args, "language", None), cfg.language.value if cfg else "java"))
    excl = getattr(args, "exclude", None)
    exclusion = ExclusionFilter(excl, "command line") if excl else (cfg.exclusion if cfg else None)
    return load_corpus(root_path, exclusion, language), label or "current"


def _emit(args, name: str, doc: dict) -> None:
    out = getattr(args, "out", None)
    fmt = getattr(args, "format", None) or "json"
    if fmt == "html":
        artifact = {"project": name, "version": doc.get("meta", {}).get("version", ""),
                    "reports": {name: doc}, "gates": [], "skipped": [], "errors": []}
        text = render_artifact_html(artifact)
    else:
        text = dumps(doc)
    if out:
        Path(out).mkdir(parents=True, exist_ok=True)
        (Path(out) / f"{name}.{fmt}").write_text(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str | None):
    return json.loads(Path(path).read_text()) if path else None


def cmd_clones(args, cfg) -> int:
    corpus, label = _corpus(args, cfg, args.root)
    base = cfg.clones if cfg else CloneConfig()
    gapped = _pick(args.gapped, False)
    config = CloneConfig(_pick(args.min_length, base.min_length), gapped,
                         _pick(args.max_gaps, base.max_gaps_per_clone),
                         _pick(args.max_gap_ratio, base.max_gap_ratio))
    _emit(args, "gapped" if gapped else "clones", clone_report(corpus, config, label))
    return EXIT_OK


def cmd_arch(args, cfg) -> int:
    model = _pick(args.model, cfg.reflexion_model if cfg else None)
    if model is None:
        raise UsageError("arch needs --model")
    corpus, label = _corpus(args, cfg, args.root)
    _emit(args, "arch", arch_report(corpus, Path(model), label))
    return EXIT_OK


def cmd_findings(args, cfg) -> int:
    base = cfg.findings if cfg and cfg.findings else FindingsConfig()
    label = getattr(args, "label", None) or (cfg.versions[0][0] if cfg else "current")
    path = _pick(args.input, base.file_for(label))
    if path is None:
        raise UsageError("findings needs --in")
    selector = base.selector
    if args.categories:
        selector = RuleSelector(SelectorMode.SELECTED_CATEGORIES, [c.strip() for c in args.categories.split(",")],
                                exclusions=selector.exclusions)
    elif args.rules:
        selector = RuleSelector(SelectorMode.SELECTED_RULES, rules=[r.strip() for r in args.rules.split(",")],
                                exclusions=selector.exclusions)
    flt = FindingsFilter(_pick(args.min_severity, base.filter.min_severity),
                         _pick(args.min_confidence, base.filter.min_confidence), set(),
                         list(base.filter.path_excludes))
    fc = FindingsConfig(Path(_pick(args.catalog, base.catalog)) if _pick(args.catalog, base.catalog) else None,
                        {}, None,
                        Path(_pick(args.critical, base.critical)) if _pick(args.critical, base.critical) else None,
                        Path(_pick(args.suppressed, base.suppressed)) if _pick(args.suppressed, base.suppressed)
                        else None, selector, flt)
    files, corpus_hash = None, ""
    if args.loc is not None:
        loc = args.loc
    else:
        root = args.root
        if root is None and cfg is None:
            raise UsageError("findings needs --loc or --root to compute density")
        corpus, label = _corpus(args, cfg, root)
        loc, files, corpus_hash = corpus.loc, [f.path for f in corpus.files], corpus.content_hash()
    _emit(args, "findings", findings_report(fc, Path(path), loc, label, files, corpus_hash))
    return EXIT_OK


def cmd_metrics(args, cfg) -> int:
    corpus, label = _corpus(args, cfg, args.root)
    thresholds = [Threshold.parse(t) for t in args.threshold] if args.threshold else (cfg.thresholds if cfg else [])
    _emit(args, "metrics", metrics_report(corpus, thresholds, label))
    return EXIT_OK


def cmd_assess(args, cfg) -> int:
    model = _pick(args.model, cfg.quality_model if cfg else None)
    docs = [_read_json(x) for x in (args.clones, args.findings, args.metrics, args.arch)]
    if all(d is None for d in docs):
        raise UsageError("assess needs at least one of --clones, --findings, --metrics, --arch")
    label = getattr(args, "label", None) or next((d["meta"]["version"] for d in docs if d and "meta" in d),
                                                 "current")
    manual = _read_json(args.manual) if args.manual else (cfg.manual_measures if cfg else None)
    model = Path(model) if model not in (None, "demo") and not isinstance(model, Path) else model
    _emit(args, "assessment", assessment_report(model, label, *docs, manual=manual))
    return EXIT_OK


def cmd_rank(args, cfg) -> int:
    paths = []
    for p in args.inputs:
        p = Path(p)
        paths += sorted(x for x in p.glob("*.json") if x.name != "index.json") if p.is_dir() else [p]
    results = load_results(paths)
    criteria = [c.strip() for c in args.criteria.split(",") if c.strip()]
    tables = rank_all(results, criteria)
    comparisons = {}
    if "grade" in tables:
        for c, t in tables.items():
            if c != "grade":
                comparisons[f"{c}-vs-grade"] = compare_rankings(t, tables["grade"]).to_dict()
    if args.text:
        sys.stdout.write(text_matrix(tables))
        return EXIT_OK
    _emit(args, "rank", {"tables": {c: t.to_dict() for c, t in tables.items()},
                         "comparisons": comparisons, "matrix": text_matrix(tables)})
    return EXIT_OK


def cmd_run(args, cfg) -> int:
    if cfg is None:
        raise UsageError("run needs --config or $QUASTAT_CONFIG")
    problems = cfg.check_paths()
    for p in problems:
        log.error(p)
    artifacts = run_pipeline(cfg)
    out = getattr(args, "out", None)
    fmt = getattr(args, "format", None) or "json"
    if out:
        emit_reports(artifacts, out, ["json", fmt] if fmt == "html" else ["json"])
    else:
        sys.stdout.write(dumps({"artifacts": artifacts,
                                "index": index_document(artifacts, [a["version"] for a in artifacts])}))
    return exit_code(artifacts)


def cmd_report(args, cfg) -> int:
    src = Path(args.input)
    index = json.loads((src / "index.json").read_text())
    artifacts = [json.loads((src / name).read_text()) for name in index["artifacts"]]
    out = getattr(args, "out", None)
    fmt = getattr(args, "format", None) or "html"
    if out:
        emit_reports(artifacts, out, ["json", "html"] if fmt == "html" else ["json"])
    elif fmt == "html":
        sys.stdout.write(render_index_html(artifacts, index_document(artifacts, index["artifacts"])))
    else:
        sys.stdout.write(dumps(index_document(artifacts, index["artifacts"])))
    return exit_code(artifacts)


COMMANDS = {"clones": cmd_clones, "arch": cmd_arch, "findings": cmd_findings, "metrics": cmd_metrics,
            "assess": cmd_assess, "rank": cmd_rank, "run": cmd_run, "report": cmd_report}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _load_config(args)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"quastat {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:
        if args.verbose:
            raise
        print(f"quastat {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
