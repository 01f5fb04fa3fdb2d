"""Architecture conformance against reflexion models.

Dependencies are extracted from source text (imports, base-type clauses
and type references that resolve to types declared in the corpus), mapped
onto the model's components and checked against its rules. Anything not
explicitly allowed or tolerated between two different components is a
violation.
"""

from __future__ import annotations

import enum
import json
import re
from collections import defaultdict, deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from jsonschema import ValidationError
from sklearn.base import BaseEstimator

from .schemas import validate
from .source_model import Language, SourceFile, Token, TokenKind, TRIVIA
from .validation import check_corpus, check_is_fitted


class ModelError(ValueError):
    """The reflexion model is inconsistent."""


class EntityKind(str, enum.Enum):
    NAMESPACE = "Namespace"
    TYPE = "Type"
    FILE = "File"


class DependencyKind(str, enum.Enum):
    IMPORT = "Import"
    TYPE_REFERENCE = "TypeReference"
    INHERITANCE = "Inheritance"
    CALL = "Call"


class Effect(str, enum.Enum):
    ALLOW = "Allow"
    DENY = "Deny"
    TOLERATE = "Tolerate"

    @classmethod
    def parse(cls, value: str) -> "Effect":
        for e in cls:
            if e.value.lower() == str(value).lower():
                return e
        raise ModelError(f"unknown rule effect {value!r}")


class Taxonomy(str, enum.Enum):
    LAYER_CIRCUMVENTION = "LayerCircumvention"
    CIRCULAR_DEPENDENCY = "CircularDependency"
    UNDOCUMENTED_COMMON_USE = "UndocumentedCommonUse"
    DATA_DEPENDENCY = "DataDependency"
    OTHER = "Other"


@dataclass(frozen=True, order=True)
class CodeEntity:
    qualified_name: str
    kind: EntityKind = EntityKind.TYPE
    file: str = ""


@dataclass(frozen=True)
class DependencyFact:
    source: CodeEntity
    target: CodeEntity
    kind: DependencyKind
    file: str
    line: int

    @property
    def sort_key(self):
        return (self.file, self.line, self.source.qualified_name, self.target.qualified_name,
                self.kind.value)

    def to_dict(self) -> dict:
        return {"from": self.source.qualified_name, "to": self.target.qualified_name,
                "kind": self.kind.value, "file": self.file, "line": self.line}


@dataclass
class ExtractionResult:
    facts: list[DependencyFact]
    entities: list[CodeEntity]
    unresolved: int = 0
    unresolved_names: list[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.facts)

    def __len__(self):
        return len(self.facts)


# --------------------------------------------------------------------------
# extraction

_TYPE_KEYWORDS = {"class", "interface", "enum", "struct"}


@dataclass
class _Decl:
    qualified: str
    file: str
    line: int
    namespace: str
    outer: str | None
    bases: list[tuple[str, int]]
    body: tuple[int, int]  # significant-token index range of the body


@dataclass
class _FileScan:
    path: str
    namespace: str
    single_imports: dict[str, tuple[str, int]]  # simple name -> (qualified, line)
    static_imports: list[tuple[str, int]]
    wildcard_imports: list[str]
    decls: list[_Decl]
    toks: list[Token]


def _significant(sf: SourceFile) -> list[Token]:
    return [t for t in sf.tokens if t.kind not in TRIVIA]


def _read_dotted(toks: Sequence[Token], i: int) -> tuple[str, int]:
    parts = []
    while i < len(toks) and toks[i].kind in (TokenKind.IDENTIFIER, TokenKind.KEYWORD):
        parts.append(toks[i].text.lstrip("@"))
        if i + 1 < len(toks) and toks[i + 1].text in (".", "::") and i + 2 < len(toks):
            i += 2
            continue
        i += 1
        break
    return ".".join(parts), i


def _skip_generics(toks: Sequence[Token], i: int) -> int:
    if i < len(toks) and toks[i].text == "<":
        depth = 0
        while i < len(toks):
            t = toks[i].text
            if t == "<":
                depth += 1
            elif t == ">":
                depth -= 1
            elif t == ">>":
                depth -= 2
            elif t == ">>>":
                depth -= 3
            i += 1
            if depth <= 0:
                break
    return i


def _match_brace(toks: Sequence[Token], i: int) -> int:
    depth = 0
    for j in range(i, len(toks)):
        if toks[j].text == "{":
            depth += 1
        elif toks[j].text == "}":
            depth -= 1
            if depth == 0:
                return j
    return len(toks) - 1


def _scan_file(sf: SourceFile) -> _FileScan:
    toks = _significant(sf)
    csharp = sf.language is Language.CSHARP
    scan = _FileScan(sf.path, "", {}, [], [], [], toks)
    ns_stack: list[tuple[str, int]] = []  # (namespace, closing brace index)
    type_stack: list[tuple[str, int]] = []
    i, n = 0, len(toks)
    while i < n:
        while ns_stack and i > ns_stack[-1][1]:
            ns_stack.pop()
        while type_stack and i > type_stack[-1][1]:
            type_stack.pop()
        t = toks[i]
        ns = ".".join(x for x, _ in ns_stack if x) or scan.namespace
        if t.text == "package" and t.kind is TokenKind.KEYWORD:
            name, i = _read_dotted(toks, i + 1)
            scan.namespace = name
            continue
        if t.text == "namespace" and t.kind is TokenKind.KEYWORD:
            name, j = _read_dotted(toks, i + 1)
            if j < n and toks[j].text == "{":
                ns_stack.append((name, _match_brace(toks, j)))
                i = j + 1
            else:
                scan.namespace = name
                i = j
            continue
        if not type_stack and ((t.text == "import" and not csharp) or (t.text == "using" and csharp)):
            j = i + 1
            if j < n and toks[j].text == "(":
                i += 1
                continue
            static = j < n and toks[j].text == "static"
            if static:
                j += 1
            alias = None
            if j + 1 < n and toks[j + 1].text == "=":
                alias = toks[j].text
                j += 2
            name, j = _read_dotted(toks, j)
            wildcard = False
            if j < n and toks[j].text == "*":
                wildcard = True
                j += 1
            name = name.rstrip(".")
            if alias:
                scan.single_imports[alias] = (name, t.line)
            elif wildcard:
                scan.wildcard_imports.append(name)
            elif static:
                scan.static_imports.append((name, t.line))
            elif csharp:
                scan.wildcard_imports.append(name)
            else:
                scan.single_imports[name.rsplit(".", 1)[-1]] = (name, t.line)
            i = j
            continue
        is_record = (t.text == "record" and t.kind is TokenKind.IDENTIFIER and i + 1 < n
                     and toks[i + 1].kind is TokenKind.IDENTIFIER)
        if ((t.kind is TokenKind.KEYWORD and t.text in _TYPE_KEYWORDS) or is_record) and i + 1 < n \
                and toks[i + 1].kind is TokenKind.IDENTIFIER and (i == 0 or toks[i - 1].text not in (".", ":", ",")):
            name = toks[i + 1].text
            outer = type_stack[-1][0] if type_stack else None
            prefix = outer or ns
            qualified = f"{prefix}.{name}" if prefix else name
            j = _skip_generics(toks, i + 2)
            bases: list[tuple[str, int]] = []
            # header up to the body brace (or ';' for forward/record decls)
            in_bases = False
            paren = 0
            while j < n and not (toks[j].text in ("{", ";") and paren == 0):
                tx = toks[j].text
                if tx == "(":
                    paren += 1
                elif tx == ")":
                    paren -= 1
                elif paren == 0 and tx in ("extends", "implements", ":") and tx != "where":
                    in_bases = True
                elif paren == 0 and tx == "where":
                    in_bases = False
                elif in_bases and paren == 0 and toks[j].kind is TokenKind.IDENTIFIER:
                    base, j2 = _read_dotted(toks, j)
                    bases.append((base, toks[j].line))
                    j = _skip_generics(toks, j2)
                    continue
                j += 1
            if j < n and toks[j].text == "{":
                close = _match_brace(toks, j)
                decl = _Decl(qualified, sf.path, t.line, ns, outer, bases, (j + 1, close))
                scan.decls.append(decl)
                type_stack.append((qualified, close))
                i = j + 1
                continue
            scan.decls.append(_Decl(qualified, sf.path, t.line, ns, outer, bases, (j, j)))
            i = j + 1
            continue
        i += 1
    return scan


class _Resolver:
    def __init__(self, scans: Sequence[_FileScan]):
        self.types = {d.qualified for s in scans for d in s.decls}

    def resolve(self, name: str, scan: _FileScan, decl: _Decl | None) -> str | None:
        if not name:
            return None
        if name in self.types:
            return name
        head, _, rest = name.partition(".")
        # enclosing types, innermost first
        outer = decl.qualified if decl else None
        while outer:
            cand = f"{outer}.{name}"
            if cand in self.types:
                return cand
            outer = outer.rpartition(".")[0] if outer.rpartition(".")[0] in self.types else None
        if head in scan.single_imports:
            full = scan.single_imports[head][0]
            cand = f"{full}.{rest}" if rest else full
            if cand in self.types:
                return cand
        ns = decl.namespace if decl else scan.namespace
        while ns:
            cand = f"{ns}.{name}"
            if cand in self.types:
                return cand
            ns = ns.rpartition(".")[0]
        for pkg in scan.wildcard_imports:
            cand = f"{pkg}.{name}"
            if cand in self.types:
                return cand
        return None


def extract_dependencies(corpus) -> ExtractionResult:
    """Static dependency facts between types declared in the corpus."""
    corpus = check_corpus(corpus)
    scans = [_scan_file(sf) for sf in corpus.files]
    resolver = _Resolver(scans)
    entities = sorted({CodeEntity(d.qualified, EntityKind.TYPE, d.file) for s in scans for d in s.decls})
    by_name = {e.qualified_name: e for e in entities}
    facts: dict[tuple, DependencyFact] = {}
    unresolved: list[str] = []

    def add(src: str, dst: str, kind: DependencyKind, path: str, line: int) -> None:
        if src == dst or src not in by_name or dst not in by_name:
            return
        key = (src, dst, kind)
        fact = DependencyFact(by_name[src], by_name[dst], kind, path, line)
        if key not in facts or fact.sort_key < facts[key].sort_key:
            facts[key] = fact

    for scan in scans:
        top_level = [d for d in scan.decls if d.outer is None]
        for simple, (full, line) in sorted(scan.single_imports.items()):
            target = resolver.resolve(full, scan, None)
            if target is None:
                unresolved.append(full)
                continue
            for d in top_level:
                add(d.qualified, target, DependencyKind.IMPORT, scan.path, line)
        for full, line in scan.static_imports:
            target = resolver.resolve(full, scan, None) or resolver.resolve(full.rpartition(".")[0], scan, None)
            if target is None:
                unresolved.append(full)
                continue
            for d in top_level:
                add(d.qualified, target, DependencyKind.IMPORT, scan.path, line)
        for d in scan.decls:
            for base, line in d.bases:
                target = resolver.resolve(base, scan, d)
                if target is None:
                    unresolved.append(base)
                    continue
                add(d.qualified, target, DependencyKind.INHERITANCE, scan.path, line)
        # body references; nested declarations own their own bodies
        owners = sorted(scan.decls, key=lambda d: d.body[0])
        toks = scan.toks
        for idx in range(len(toks)):
            t = toks[idx]
            if t.kind is not TokenKind.IDENTIFIER or (idx > 0 and toks[idx - 1].text in (".", "::")):
                continue
            owner = None
            for d in owners:
                if d.body[0] <= idx < d.body[1]:
                    owner = d  # later (inner) bodies override
            if owner is None:
                continue
            # skip the declaration names themselves
            if idx > 0 and toks[idx - 1].text in _TYPE_KEYWORDS:
                continue
            chain, end = _read_dotted(toks, idx)
            parts = chain.split(".")
            target = None
            used = 0
            for cut in range(len(parts), 0, -1):
                target = resolver.resolve(".".join(parts[:cut]), scan, owner)
                if target:
                    used = cut
                    break
            if target is None:
                continue
            kind = DependencyKind.TYPE_REFERENCE
            if idx > 0 and toks[idx - 1].text == "new":
                kind = DependencyKind.CALL
            elif used < len(parts) and end < len(toks) and toks[end].text == "(":
                kind = DependencyKind.CALL
            add(owner.qualified, target, kind, scan.path, t.line)
    ordered = sorted(facts.values(), key=lambda f: f.sort_key)
    return ExtractionResult(ordered, entities, len(unresolved), sorted(unresolved))


# --------------------------------------------------------------------------
# reflexion model

@dataclass
class Component:
    name: str
    parent: str | None = None
    mapping_patterns: list[str] = field(default_factory=list)
    library: bool = False


@dataclass(frozen=True)
class PolicyRule:
    from_component: str
    to_component: str
    effect: Effect = Effect.ALLOW


@dataclass
class ReflexionModel:
    components: list[Component]
    rules: list[PolicyRule] = field(default_factory=list)
    excludes: list[str] = field(default_factory=list)
    layers: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        names = [c.name for c in self.components]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise ModelError(f"duplicate component names: {sorted(dup)}")
        self._by_name = {c.name: c for c in self.components}
        for c in self.components:
            if c.parent is not None and c.parent not in self._by_name:
                raise ModelError(f"component {c.name!r} has unknown parent {c.parent!r}")
        for c in self.components:
            seen = {c.name}
            p = c.parent
            while p is not None:
                if p in seen:
                    raise ModelError(f"component hierarchy cycle through {c.name!r}")
                seen.add(p)
                p = self._by_name[p].parent
        for r in self.rules:
            for end in (r.from_component, r.to_component):
                if end not in self._by_name:
                    raise ModelError(f"rule references unknown component {end!r}")
        for layer in self.layers:
            if layer not in self._by_name:
                raise ModelError(f"layer {layer!r} is not a declared component")
        self._patterns = []
        for c in self.components:
            for p in c.mapping_patterns:
                self._patterns.append((_Pattern(p), c.name))
        self._excludes = [_Pattern(p) for p in self.excludes]

    def component(self, name: str) -> Component:
        return self._by_name[name]

    def ancestors(self, name: str) -> list[str]:
        """``name`` followed by its ancestors, innermost first."""
        out = []
        cur: str | None = name
        while cur is not None:
            out.append(cur)
            cur = self._by_name[cur].parent
        return out

    def is_excluded(self, qualified_name: str) -> bool:
        return any(p.matches(qualified_name) for p in self._excludes)

    @classmethod
    def from_dict(cls, d: Mapping) -> "ReflexionModel":
        comps = [Component(c["name"], c.get("parent"), list(c.get("map", [])), bool(c.get("library", False)))
                 for c in d.get("components", [])]
        rules = [PolicyRule(r["from"], r["to"], Effect.parse(r.get("effect", "Allow")))
                 for r in d.get("rules", [])]
        return cls(comps, rules, list(d.get("exclude", [])), list(d.get("layers", [])))

    @classmethod
    def load(cls, path: "str | Path") -> "ReflexionModel":
        d = json.loads(Path(path).read_text())
        try:
            validate(d, "reflexion_model")
        except ValidationError as exc:
            raise ModelError(f"{path}: {exc.message}") from None
        return cls.from_dict(d)

    def to_dict(self) -> dict:
        return {
            "components": [{"name": c.name, "parent": c.parent, "map": c.mapping_patterns,
                            "library": c.library} for c in self.components],
            "rules": [{"from": r.from_component, "to": r.to_component, "effect": r.effect.value}
                      for r in self.rules],
            "layers": self.layers,
            "exclude": self.excludes,
        }


class _Pattern:
    """Qualified-name pattern: ``a.b.*`` globs, ``re:...`` regexes, else a prefix."""

    def __init__(self, text: str):
        self.text = text
        if text.startswith("re:"):
            self.rx = re.compile(text[3:])
            self.specificity = len(text) - 3
        elif "*" in text:
            literal = text.replace("*", "")
            self.specificity = len(literal.rstrip("."))
            body = re.escape(text).replace(r"\.\*", r"(?:\..*)?").replace(r"\*", ".*")
            self.rx = re.compile(body)
        else:
            self.specificity = len(text)
            self.rx = re.compile(re.escape(text) + r"(?:\..*)?")

    def matches(self, name: str) -> bool:
        return self.rx.fullmatch(name) is not None


UNMAPPED = None


def map_entities(model: ReflexionModel, entities: Iterable) -> dict[str, str | None]:
    """Map entity names to components; the longest matching pattern wins."""
    mapping: dict[str, str | None] = {}
    for e in entities:
        name = e.qualified_name if isinstance(e, CodeEntity) else str(e)
        if model.is_excluded(name):
            continue
        best: list[tuple[int, str]] = []
        for pat, comp in model._patterns:
            if pat.matches(name):
                best.append((pat.specificity, comp))
        if not best:
            mapping[name] = UNMAPPED
            continue
        top = max(s for s, _ in best)
        winners = sorted({c for s, c in best if s == top})
        if len(winners) > 1:
            raise ModelError(f"ambiguous mapping for {name!r}: {' and '.join(winners)}")
        mapping[name] = winners[0]
    return mapping


@dataclass
class Violation:
    fact: DependencyFact
    from_component: str
    to_component: str
    level: str = "ClassLevel"
    taxonomy: Taxonomy = Taxonomy.OTHER

    def to_dict(self) -> dict:
        d = self.fact.to_dict()
        d.update({"from_component": self.from_component, "to_component": self.to_component,
                  "level": self.level, "taxonomy": self.taxonomy.value})
        return d


@dataclass
class ConformanceReport:
    violations: list[Violation]
    component_violations: list[tuple[str, str]]
    tolerated: list[Violation]
    coverage_gaps: list[DependencyFact]
    intra_component: int
    allowed: int
    edges: dict[tuple[str, str], list[DependencyFact]]
    unresolved: int = 0
    unmapped: list[str] = field(default_factory=list)

    @property
    def class_violations(self) -> int:
        return len({(v.fact.source.qualified_name, v.fact.target.qualified_name) for v in self.violations})

    @property
    def component_level(self) -> int:
        return len(self.component_violations)

    def matrix(self) -> dict[str, dict[str, int]]:
        m: dict[str, dict[str, int]] = defaultdict(dict)
        for v in self.violations:
            row = m[v.from_component]
            row[v.to_component] = row.get(v.to_component, 0) + 1
        return {k: dict(sorted(v.items())) for k, v in sorted(m.items())}

    def to_dict(self) -> dict:
        return {
            "summary": {
                "component_violations": self.component_level,
                "class_violations": self.class_violations,
                "violating_facts": len(self.violations),
                "tolerated": len(self.tolerated),
                "coverage_gaps": len(self.coverage_gaps),
                "intra_component": self.intra_component,
                "allowed": self.allowed,
                "unresolved": self.unresolved,
            },
            "component_pairs": [list(p) for p in self.component_violations],
            "matrix": self.matrix(),
            "violations": [v.to_dict() for v in self.violations],
            "tolerated": [v.to_dict() for v in self.tolerated],
            "coverage_gaps": [f.to_dict() for f in self.coverage_gaps],
            "unmapped": self.unmapped,
        }


def _rule_for(model: ReflexionModel, src: str, dst: str) -> Effect | None:
    src_chain = model.ancestors(src)
    dst_chain = model.ancestors(dst)
    best = None
    rank = {Effect.DENY: 2, Effect.TOLERATE: 1, Effect.ALLOW: 0}
    for r in model.rules:
        if r.from_component in src_chain and r.to_component in dst_chain:
            spec = -(src_chain.index(r.from_component) + dst_chain.index(r.to_component))
            key = (spec, rank[r.effect])
            if best is None or key > best[0]:
                best = (key, r.effect)
    return best[1] if best else None


def check_conformance(model: ReflexionModel, facts: "Iterable[DependencyFact] | ExtractionResult",
                      mapping: Mapping[str, str | None] | None = None) -> ConformanceReport:
    """Compare dependency facts with the model's rules (default deny)."""
    unresolved = facts.unresolved if isinstance(facts, ExtractionResult) else 0
    facts = sorted(facts, key=lambda f: f.sort_key)
    if mapping is None:
        names = {f.source.qualified_name for f in facts} | {f.target.qualified_name for f in facts}
        mapping = map_entities(model, sorted(names))
    violations, tolerated, gaps = [], [], []
    intra = allowed = 0
    edges: dict[tuple[str, str], list[DependencyFact]] = defaultdict(list)
    for f in facts:
        s_name, t_name = f.source.qualified_name, f.target.qualified_name
        if s_name not in mapping or t_name not in mapping:
            continue  # excluded
        src, dst = mapping[s_name], mapping[t_name]
        if src is None or dst is None:
            gaps.append(f)
            continue
        if src == dst:
            intra += 1
            continue
        edges[(src, dst)].append(f)
        effect = _rule_for(model, src, dst)
        if effect is Effect.ALLOW:
            allowed += 1
        elif effect is Effect.TOLERATE:
            tolerated.append(Violation(f, src, dst))
        else:
            violations.append(Violation(f, src, dst))
    pairs = sorted({(v.from_component, v.to_component) for v in violations})
    unmapped = sorted(n for n, c in mapping.items() if c is None)
    return ConformanceReport(violations, pairs, tolerated, gaps, intra, allowed, dict(edges),
                             unresolved, unmapped)


def _reaches(graph: Mapping[str, set[str]], start: str, goal: str) -> bool:
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            return True
        for nxt in graph.get(cur, ()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def _layer_index(model: ReflexionModel, comp: str) -> int | None:
    for c in model.ancestors(comp):
        if c in model.layers:
            return model.layers.index(c)
    return None


def classify_violations(violations: "Sequence[Violation] | ConformanceReport",
                        model: ReflexionModel) -> list[Violation]:
    """Assign a defect taxonomy to each violation (first matching class wins)."""
    if isinstance(violations, ConformanceReport):
        edges = violations.edges
        items = violations.violations
    else:
        items = list(violations)
        edges = defaultdict(list)
        for v in items:
            edges[(v.from_component, v.to_component)].append(v.fact)
    graph: dict[str, set[str]] = defaultdict(set)
    for (a, b) in edges:
        graph[a].add(b)
    for v in items:
        graph[v.from_component].add(v.to_component)
    call_like = {DependencyKind.CALL, DependencyKind.IMPORT}
    for v in items:
        src, dst = v.from_component, v.to_component
        li, lj = _layer_index(model, src), _layer_index(model, dst)
        if li is not None and lj is not None and lj - li >= 2:
            v.taxonomy = Taxonomy.LAYER_CIRCUMVENTION
        elif _reaches(graph, dst, src):
            v.taxonomy = Taxonomy.CIRCULAR_DEPENDENCY
        elif v.fact.kind in (DependencyKind.TYPE_REFERENCE, DependencyKind.INHERITANCE) and not any(
                f.kind in call_like for f in edges.get((src, dst), ())):
            v.taxonomy = Taxonomy.DATA_DEPENDENCY
        elif any(model.component(c).library for c in model.ancestors(dst)):
            v.taxonomy = Taxonomy.UNDOCUMENTED_COMMON_USE
        else:
            v.taxonomy = Taxonomy.OTHER
    return items


def analyse_architecture(corpus, model: ReflexionModel) -> ConformanceReport:
    extraction = extract_dependencies(corpus)
    mapping = map_entities(model, extraction.entities)
    report = check_conformance(model, extraction, mapping)
    classify_violations(report, model)
    return report


class ConformanceChecker(BaseEstimator):
    """Reflexion-model conformance with an estimator interface.

    ``model`` is a :class:`ReflexionModel`, a model dict or a path to a
    model file. ``fit`` accepts a corpus or a list of dependency facts.
    """

    def __init__(self, model=None):
        self.model = model

    def _model(self) -> ReflexionModel:
        m = self.model
        if isinstance(m, ReflexionModel):
            return m
        if isinstance(m, Mapping):
            return ReflexionModel.from_dict(m)
        if m is None:
            raise ValueError("ConformanceChecker needs a reflexion model")
        return ReflexionModel.load(m)

    def fit(self, X, y=None):
        model = self._model()
        if isinstance(X, (list, tuple)) and X and isinstance(X[0], DependencyFact) or isinstance(X, ExtractionResult):
            facts = X
        else:
            facts = extract_dependencies(check_corpus(X))
        entities = {f.source for f in facts} | {f.target for f in facts}
        if isinstance(facts, ExtractionResult):
            entities |= set(facts.entities)
        self.mapping_ = map_entities(model, sorted(entities))
        self.report_ = check_conformance(model, facts, self.mapping_)
        self.violations_ = classify_violations(self.report_, model)
        return self

    def predict(self, X=None):
        """Violations of the fitted facts."""
        check_is_fitted(self, "report_")
        return self.violations_

    def transform(self, X=None):
        check_is_fitted(self, "report_")
        return self.report_.to_dict()
