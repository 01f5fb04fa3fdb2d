"""Hierarchical quality model: measures, product factors and characteristics.

Factor utilities come from piecewise-linear evaluation specifications over
weighted measure means; characteristics aggregate factor and child
utilities by weighted mean. Utilities map to school grades 1 (best) to 6.
Measures that cannot be collected are Missing: they drop out of the point
result, and every node also carries the utility interval obtained by
letting the missing values range over their whole domain.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
from jsonschema import ValidationError
from sklearn.base import BaseEstimator

from .schemas import validate
from .validation import check_is_fitted


class ModelLoadError(ValueError):
    pass


class Source(str, enum.Enum):
    CLONE_DETECTION = "CloneDetection"
    FINDINGS = "Findings"
    METRICS = "Metrics"
    ARCH_CONFORMANCE = "ArchConformance"
    MANUAL = "Manual"


class Normalization(str, enum.Enum):
    PER_KLOC = "PerKLoc"
    PER_ENTITY = "PerEntity"
    ABSOLUTE = "Absolute"
    RATIO = "Ratio"

    @property
    def domain(self) -> tuple[float, float]:
        return (0.0, 1.0) if self is Normalization.RATIO else (0.0, math.inf)


class Direction(str, enum.Enum):
    HIGHER_IS_WORSE = "HigherIsWorse"
    HIGHER_IS_BETTER = "HigherIsBetter"


class Polarity(str, enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"


class _Missing:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Missing"

    def __bool__(self) -> bool:
        return False


MISSING = _Missing()


def _enum(cls, value, what: str):
    try:
        return cls(value)
    except ValueError:
        valid = ", ".join(e.value for e in cls)
        raise ModelLoadError(f"unknown {what} {value!r}; valid: {valid}") from None


@dataclass(frozen=True)
class Measure:
    id: str
    source: Source
    normalization: Normalization
    key: str = ""
    entity_kind: str | None = None
    description: str = ""


@dataclass(frozen=True)
class EvaluationSpec:
    lower: float
    upper: float
    direction: Direction = Direction.HIGHER_IS_WORSE

    def utility(self, value: float) -> float:
        if math.isinf(value):
            x = 1.0 if value > 0 else 0.0
        else:
            x = (value - self.lower) / (self.upper - self.lower)
        x = min(1.0, max(0.0, x))
        return 1.0 - x if self.direction is Direction.HIGHER_IS_WORSE else x


@dataclass
class ProductFactor:
    id: str
    measures: list[tuple[str, float]]
    eval_spec: EvaluationSpec
    description: str = ""


@dataclass
class Impact:
    factor: str
    weight: float
    polarity: Polarity = Polarity.POSITIVE


@dataclass
class QualityCharacteristic:
    id: str
    impacts: list[Impact] = field(default_factory=list)
    children: list[tuple[str, float]] = field(default_factory=list)
    description: str = ""


@dataclass
class QualityModelSpec:
    measures: dict[str, Measure]
    factors: dict[str, ProductFactor]
    characteristics: dict[str, QualityCharacteristic]
    root: str
    name: str = "quality model"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "root": self.root,
            "measures": [{"id": m.id, "source": m.source.value, "normalization": m.normalization.value,
                          "key": m.key, "entity_kind": m.entity_kind, "description": m.description}
                         for m in self.measures.values()],
            "factors": [{"id": f.id, "description": f.description,
                         "measures": [{"measure": m, "weight": w} for m, w in f.measures],
                         "eval": {"lower": f.eval_spec.lower, "upper": f.eval_spec.upper,
                                  "direction": f.eval_spec.direction.value}}
                        for f in self.factors.values()],
            "characteristics": [{"id": c.id, "description": c.description,
                                 "impacts": [{"factor": i.factor, "weight": i.weight,
                                              "polarity": i.polarity.value} for i in c.impacts],
                                 "children": [{"id": k, "weight": w} for k, w in c.children]}
                                for c in self.characteristics.values()],
        }


def _weights_ok(weights: Sequence[float], where: str) -> None:
    if any(w < 0 for w in weights):
        raise ModelLoadError(f"{where}: negative weight")
    if weights and sum(weights) <= 0:
        raise ModelLoadError(f"{where}: weights must sum to a positive value")


def model_from_dict(d: Mapping) -> QualityModelSpec:
    measures: dict[str, Measure] = {}
    for m in d.get("measures", []):
        if m["id"] in measures:
            raise ModelLoadError(f"duplicate measure {m['id']!r}")
        norm = _enum(Normalization, m.get("normalization", "Absolute"), "normalization")
        if norm is Normalization.PER_ENTITY and not m.get("entity_kind"):
            raise ModelLoadError(f"measure {m['id']!r}: PerEntity needs entity_kind")
        measures[m["id"]] = Measure(m["id"], _enum(Source, m.get("source"), "measure source"), norm,
                                    m.get("key", m["id"]), m.get("entity_kind"), m.get("description", ""))
    factors: dict[str, ProductFactor] = {}
    for f in d.get("factors", []):
        if f["id"] in factors:
            raise ModelLoadError(f"duplicate factor {f['id']!r}")
        refs = []
        for ref in f.get("measures", []):
            mid, w = (ref, 1.0) if isinstance(ref, str) else (ref["measure"], float(ref.get("weight", 1.0)))
            if mid not in measures:
                raise ModelLoadError(f"factor {f['id']!r} references unknown measure {mid!r}")
            refs.append((mid, w))
        if not refs:
            raise ModelLoadError(f"factor {f['id']!r} has no measures")
        _weights_ok([w for _, w in refs], f"factor {f['id']!r}")
        ev = f.get("eval", {})
        spec = EvaluationSpec(float(ev["lower"]), float(ev["upper"]),
                              _enum(Direction, ev.get("direction", "HigherIsWorse"), "direction"))
        if not spec.lower < spec.upper:
            raise ModelLoadError(f"factor {f['id']!r}: lower threshold must be below upper")
        factors[f["id"]] = ProductFactor(f["id"], refs, spec, f.get("description", ""))
    chars: dict[str, QualityCharacteristic] = {}
    for c in d.get("characteristics", []):
        if c["id"] in chars or c["id"] in factors:
            raise ModelLoadError(f"duplicate node id {c['id']!r}")
        impacts = []
        for i in c.get("impacts", []):
            if i["factor"] not in factors:
                raise ModelLoadError(f"characteristic {c['id']!r} references unknown factor {i['factor']!r}")
            impacts.append(Impact(i["factor"], float(i.get("weight", 1.0)),
                                  _enum(Polarity, i.get("polarity", "Positive"), "polarity")))
        children = [(k, 1.0) if isinstance(k, str) else (k["id"], float(k.get("weight", 1.0)))
                    for k in c.get("children", [])]
        _weights_ok([i.weight for i in impacts] + [w for _, w in children], f"characteristic {c['id']!r}")
        chars[c["id"]] = QualityCharacteristic(c["id"], impacts, children, c.get("description", ""))
    for c in chars.values():
        for k, _ in c.children:
            if k not in chars:
                raise ModelLoadError(f"characteristic {c.id!r} has unknown child {k!r}")
    cycle = _find_cycle({c.id: [k for k, _ in c.children] for c in chars.values()})
    if cycle:
        raise ModelLoadError(f"characteristic cycle: {' -> '.join(cycle)}")
    root = d.get("root")
    if root not in chars:
        raise ModelLoadError(f"root {root!r} is not a characteristic")
    return QualityModelSpec(measures, factors, chars, root, d.get("name", "quality model"))


def _find_cycle(graph: Mapping[str, list[str]]) -> list[str] | None:
    state: dict[str, int] = {}
    path: list[str] = []

    def visit(n: str) -> list[str] | None:
        state[n] = 1
        path.append(n)
        for m in graph.get(n, []):
            if state.get(m) == 1:
                return path[path.index(m):] + [m]
            if m not in state:
                found = visit(m)
                if found:
                    return found
        state[n] = 2
        path.pop()
        return None

    for n in sorted(graph):
        if n not in state:
            found = visit(n)
            if found:
                return found
    return None


def load_model(path: "str | Path | Mapping") -> QualityModelSpec:
    d = path if isinstance(path, Mapping) else json.loads(Path(path).read_text())
    try:
        validate(d, "quality_model")
    except ValidationError as exc:
        raise ModelLoadError(exc.message) from None
    return model_from_dict(d)


def demo_model_path() -> Path:
    return Path(str(resources.files("quastat") / "data" / "demo_quality_model.json"))


def load_demo_model() -> QualityModelSpec:
    return load_model(demo_model_path())


# --------------------------------------------------------------------------
# measurement collection

def _as_dict(obj) -> Mapping | None:
    if obj is None:
        return None
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj


def _count_where(rows: Iterable[Mapping], spec: str) -> int:
    metric, op, bound = spec.split(":")
    ops = {"gt": float.__gt__, "ge": float.__ge__, "lt": float.__lt__, "le": float.__le__}
    return sum(1 for r in rows if ops[op](float(r[metric]), float(bound)))


def _raw_value(m: Measure, clones, findings, metrics, arch, manual):
    """Raw count or ratio for a measure, or MISSING."""
    key = m.key
    if m.source is Source.CLONE_DETECTION:
        if clones is None:
            return MISSING
        if key == "coverage":
            a = clones["analysed_units"]
            return clones["cloned_units"] / a if a else 0.0
        if key == "blow_up":
            return clones["blow_up"] / 100.0
        if key == "clone_classes":
            return len(clones["classes"])
        if key == "gapped_classes":
            return sum(1 for c in clones["classes"] if c.get("discrepancies"))
        return clones.get(key, MISSING)
    if m.source is Source.FINDINGS:
        if findings is None:
            return MISSING
        if key == "total":
            return findings["total"]
        if key == "critical":
            return findings["critical_count"]
        kind, _, name = key.partition(":")
        if kind == "classification":
            return findings["per_classification"].get(name, 0)
        if kind == "category":
            return findings.get("per_category", {}).get(name.lower(), 0)
        if kind == "rule":
            return findings["per_rule"].get(name, 0)
        return MISSING
    if m.source is Source.METRICS:
        if metrics is None:
            return MISSING
        if key.startswith("methods:"):
            return _count_where(metrics["per_method"], key.split(":", 1)[1])
        if key == "comment_ratio":
            return metrics["comment_lines"] / metrics["loc"] if metrics["loc"] else 0.0
        return metrics.get(key, MISSING)
    if m.source is Source.ARCH_CONFORMANCE:
        if arch is None:
            return MISSING
        return arch["summary"].get(key, MISSING)
    return (manual or {}).get(m.id, MISSING)


_ENTITY_KEYS = {"method": "n_methods", "type": "n_types", "class": "n_types", "statement": "n_statements"}


def collect_measurements(model: QualityModelSpec, clones=None, findings=None, metrics=None, arch=None,
                         corpus_stats: Mapping | None = None, manual: Mapping | None = None) -> dict:
    """Normalised value (or MISSING) for every measure of the model."""
    clones, findings, metrics, arch = (_as_dict(x) for x in (clones, findings, metrics, arch))
    stats = dict(corpus_stats or {})
    if metrics is not None:
        for k in ("loc", "n_methods", "n_types", "n_statements"):
            stats.setdefault(k, metrics[k])
        stats.setdefault("n_files", len(metrics.get("per_file", [])))
    if "loc" not in stats and findings is not None and findings.get("loc"):
        stats["loc"] = findings["loc"]
    out = {}
    for m in model.measures.values():
        raw = _raw_value(m, clones, findings, metrics, arch, manual)
        if raw is MISSING or raw is None:
            out[m.id] = MISSING
            continue
        raw = float(raw)
        if m.normalization is Normalization.PER_KLOC:
            loc = stats.get("loc")
            out[m.id] = raw * 1000.0 / loc if loc else MISSING
        elif m.normalization is Normalization.PER_ENTITY:
            kind = (m.entity_kind or "").lower()
            n = stats.get(_ENTITY_KEYS.get(kind, f"n_{kind}s"))
            out[m.id] = raw / n if n else MISSING
        else:
            out[m.id] = raw
    return out


# --------------------------------------------------------------------------
# evaluation

def to_grade(utility: float) -> float:
    if not (0.0 <= utility <= 1.0) or math.isnan(utility):
        raise ValueError(f"utility must be within [0, 1], got {utility}")
    return 6.0 - 5.0 * utility


@dataclass
class NodeResult:
    id: str
    kind: str
    utility: float | None
    interval: tuple[float, float]
    value: float | None = None
    inputs: list[str] = field(default_factory=list)
    missing: list[str] = field(default_factory=list)

    @property
    def grade(self) -> float | None:
        return None if self.utility is None else to_grade(self.utility)

    @property
    def grade_interval(self) -> tuple[float, float]:
        # best utility gives the best (lowest) grade
        return (to_grade(self.interval[1]), to_grade(self.interval[0]))

    def to_dict(self) -> dict:
        d = {"id": self.id, "kind": self.kind, "inputs": self.inputs, "missing": self.missing,
             "utility": None if self.utility is None else round(self.utility, 6),
             "grade": None if self.grade is None else round(self.grade, 1),
             "utility_interval": [round(x, 6) for x in self.interval],
             "grade_interval": [round(x, 1) for x in self.grade_interval]}
        if self.kind == "factor":
            d["value"] = None if self.value is None else round(self.value, 6)
        return d


@dataclass
class Assessment:
    per_measure: dict[str, float | _Missing]
    per_factor: dict[str, NodeResult]
    per_characteristic: dict[str, NodeResult]
    root: str

    @property
    def overall_grade(self) -> float | None:
        return self.per_characteristic[self.root].grade

    def grade(self, node: str) -> float | None:
        return (self.per_characteristic.get(node) or self.per_factor[node]).grade

    @property
    def grades(self) -> dict[str, float | None]:
        return {k: v.grade for k, v in self.per_characteristic.items()}

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "overall_grade": None if self.overall_grade is None else round(self.overall_grade, 1),
            "overall_grade_interval": [round(x, 1) for x in self.per_characteristic[self.root].grade_interval],
            "measures": {k: (None if v is MISSING else round(v, 6)) for k, v in sorted(self.per_measure.items())},
            "factors": {k: v.to_dict() for k, v in sorted(self.per_factor.items())},
            "characteristics": {k: v.to_dict() for k, v in sorted(self.per_characteristic.items())},
        }


def _wmean(pairs: Sequence[tuple[float, float]]) -> float:
    total = sum(w for _, w in pairs)
    if any(math.isinf(v) and w > 0 for v, w in pairs):
        return math.inf
    return sum(v * w for v, w in pairs) / total


def _factor(f: ProductFactor, model: QualityModelSpec, values: Mapping) -> NodeResult:
    present = [(values[m], w) for m, w in f.measures if values.get(m, MISSING) is not MISSING]
    missing = [m for m, _ in f.measures if values.get(m, MISSING) is MISSING]
    pairs = [(v, w) for v, w in present if w > 0]
    value = _wmean(pairs) if pairs else None
    util = f.eval_spec.utility(value) if value is not None else None
    if missing:
        ends = []
        for pick in (0, 1):
            filled = [(values[m] if values.get(m, MISSING) is not MISSING
                       else model.measures[m].normalization.domain[pick], w) for m, w in f.measures]
            filled = [(v, w) for v, w in filled if w > 0]
            ends.append(f.eval_spec.utility(_wmean(filled)))
        interval = (min(ends), max(ends))
    else:
        interval = (util, util)
    return NodeResult(f.id, "factor", util, interval, value, [m for m, _ in f.measures], missing)


def evaluate(model: QualityModelSpec, measurements: Mapping) -> Assessment:
    factors = {f.id: _factor(f, model, measurements) for f in model.factors.values()}
    chars: dict[str, NodeResult] = {}

    def visit(cid: str) -> NodeResult:
        if cid in chars:
            return chars[cid]
        c = model.characteristics[cid]
        parts = [(factors[i.factor], i.weight) for i in c.impacts]
        parts += [(visit(k), w) for k, w in c.children]
        point = [(r.utility, w) for r, w in parts if r.utility is not None and w > 0]
        util = sum(u * w for u, w in point) / sum(w for _, w in point) if point else None
        weighted = [(r, w) for r, w in parts if w > 0]
        if weighted:
            total = sum(w for _, w in weighted)
            lo = sum(r.interval[0] * w for r, w in weighted) / total
            hi = sum(r.interval[1] * w for r, w in weighted) / total
        else:
            lo, hi = (util, util) if util is not None else (0.0, 1.0)
        if util is not None:  # guard against float drift
            lo, hi = min(lo, util), max(hi, util)
        missing = sorted({m for r, _ in parts for m in r.missing})
        res = NodeResult(cid, "characteristic", util, (max(0.0, lo), min(1.0, hi)),
                         inputs=[i.factor for i in c.impacts] + [k for k, _ in c.children], missing=missing)
        chars[cid] = res
        return res

    for cid in model.characteristics:
        visit(cid)
    return Assessment(dict(measurements), factors, chars, model.root)


# --------------------------------------------------------------------------
# calibration

def calibrate(model: QualityModelSpec, samples: Sequence[Mapping[str, float]],
              low_q: float = 25, high_q: float = 75) -> QualityModelSpec:
    """Reset factor thresholds to percentiles of per-sample factor values.

    Each sample maps measure ids to normalised values (one sample per
    corpus file, say). A factor's value per sample is its weighted measure
    mean; its thresholds become the ``low_q`` and ``high_q`` percentiles.
    Degenerate spreads fall back to the sample range, then to a unit-width
    band (one tenth for ratio measures).
    """
    d = model.to_dict()
    for fd in d["factors"]:
        f = model.factors[fd["id"]]
        vals = []
        for s in samples:
            pairs = [(s[m], w) for m, w in f.measures if s.get(m, MISSING) is not MISSING and w > 0]
            if pairs:
                vals.append(_wmean(pairs))
        if not vals:
            continue
        arr = np.asarray(vals, dtype=float)
        lo, hi = np.percentile(arr, [low_q, high_q])
        if hi <= lo:
            lo, hi = arr.min(), arr.max()
        if hi <= lo:
            ratio = all(model.measures[m].normalization is Normalization.RATIO for m, _ in f.measures)
            hi = lo + (0.1 if ratio else 1.0)
        fd["eval"]["lower"] = round(float(lo), 6)
        fd["eval"]["upper"] = round(float(hi), 6)
    return model_from_dict(d)


class QualityAssessor(BaseEstimator):
    """Evaluates a quality model; ``fit`` takes a measurement mapping."""

    def __init__(self, model=None):
        self.model = model

    def _spec(self) -> QualityModelSpec:
        if isinstance(self.model, QualityModelSpec):
            return self.model
        if self.model is None:
            return load_demo_model()
        return load_model(self.model)

    def fit(self, X, y=None):
        self.spec_ = self._spec()
        self.assessment_ = evaluate(self.spec_, X)
        return self

    def predict(self, X=None):
        """Grades per characteristic."""
        check_is_fitted(self, "assessment_")
        if X is not None:
            return evaluate(self.spec_, X).grades
        return self.assessment_.grades

    def transform(self, X=None):
        check_is_fitted(self, "assessment_")
        return self.assessment_.to_dict()
