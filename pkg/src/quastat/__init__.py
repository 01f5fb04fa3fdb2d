"""Static quality analysis: clones, architecture conformance, findings, metrics and quality models."""

__version__ = "0.1.0"

from .source_model import (Corpus, ExclusionFilter, Language, MethodSpan, SourceFile, Unit,  # noqa: E402
                           find_method_spans, load_corpus, normalize_to_units, tokenize)
from .clones import (CloneConfig, CloneDetector, CloneReport, GappedCloneDetector, compute_metrics,  # noqa: E402
                     detect_clones, detect_gapped_clones)
from .architecture import (ConformanceChecker, ReflexionModel, check_conformance,  # noqa: E402
                           classify_violations, extract_dependencies, map_entities)
from .findings import FindingsSelector, import_findings, select_and_filter, summarize  # noqa: E402
from .code_metrics import MetricsProfiler, Threshold, check_thresholds, compute_profile  # noqa: E402
from .quality_model import QualityAssessor, collect_measurements, evaluate, load_model, to_grade  # noqa: E402
from .ranking import SystemResult, compare_rankings, rank_by  # noqa: E402

__all__ = [
    "CloneConfig", "CloneDetector", "CloneReport", "ConformanceChecker", "Corpus", "ExclusionFilter",
    "FindingsSelector", "GappedCloneDetector", "Language", "MethodSpan", "MetricsProfiler",
    "QualityAssessor", "ReflexionModel", "SourceFile", "SystemResult", "Threshold", "Unit",
    "check_conformance", "check_thresholds", "classify_violations", "collect_measurements",
    "compare_rankings", "compute_metrics", "compute_profile", "detect_clones", "detect_gapped_clones",
    "evaluate", "extract_dependencies", "find_method_spans", "import_findings", "load_corpus",
    "load_model", "map_entities", "normalize_to_units", "rank_by", "select_and_filter", "summarize",
    "to_grade", "tokenize",
]
