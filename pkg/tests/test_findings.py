import hashlib
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quastat.findings import (Classification, Finding, FindingsFilter, FindingsReport, FindingsSelector,
                              RuleCatalog, RuleDescriptor, RuleSelector, SelectorMode, density, fingerprint,
                              import_findings, read_marks, select_and_filter, summarize)
from quastat.schemas import validate

from conftest import PROJECT


@pytest.fixture(scope="module")
def catalog():
    return RuleCatalog.load(PROJECT / "rules.json")


def make(rule="R", tool="t", file="a/A.java", line=1, message="m", severity=3, confidence=1.0,
         category="correctness", classification=Classification.BUG):
    return Finding(tool, rule, file, line, message, severity, confidence, classification, category)


def sha_oracle(rule_id, path, message):
    text = rule_id + "\x1f" + path + "\x1f" + " ".join(message.split())
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# --------------------------------------------------------------------------
# ingestion

def test_import_fixture(catalog, v3_corpus):
    lines = (PROJECT / "findings" / "v1.jsonl").read_text().splitlines()
    found, warnings = import_findings(PROJECT / "findings" / "v1.jsonl", catalog, [f.path for f in v3_corpus])
    assert len(found) == len(lines)
    assert any("CognitiveComplexity" in w for w in warnings)
    assert [f.file for f in found if not f.in_corpus] == ["shop/generated/QueryParser.java"]


def test_unknown_rule_defaults_to_smell(catalog):
    found, warnings = import_findings(['{"tool": "x", "rule_id": "Q", "file": "a.java", "line": 3}'], catalog)
    assert found[0].classification is Classification.SMELL
    assert found[0].severity == 3
    assert len(warnings) == 1


def test_malformed_lines_skipped():
    lines = ['{"tool": "x", "rule_id": "Q", "file": "a.java", "line": 3}', "not json", "[1, 2]",
             '{"tool": "x", "file": "a.java", "line": 1}', "",
             '{"tool": "x", "rule_id": "Q", "file": "a.java", "line": 3, "confidence": 2}']
    found, warnings = import_findings(lines)
    assert len(found) == 1
    skipped = [w for w in warnings if "skipped" in w]
    assert [w.split(":")[0] for w in skipped] == ["line 2", "line 3", "line 4", "line 6"]


def test_missing_file_raises(tmp_path):
    with pytest.raises(OSError):
        import_findings(tmp_path / "absent.jsonl")


def test_paths_are_normalised():
    found, _ = import_findings(['{"tool": "x", "rule_id": "Q", "file": ".\\\\a\\\\B.java", "line": 3}'])
    assert found[0].file == "a/B.java"


def test_severity_map_applies():
    cat = RuleCatalog.from_obj({"rules": [{"tool": "fb", "rule_id": "X"}],
                                "severity_maps": {"fb": {"high": 5, "low": 1}}})
    found, _ = import_findings(['{"tool": "fb", "rule_id": "X", "file": "a", "line": 1, "severity": "high"}'], cat)
    assert found[0].severity == 5


def test_catalog_rejects_duplicates_and_bad_severity():
    with pytest.raises(ValueError, match="duplicate"):
        RuleCatalog([RuleDescriptor("A", "t"), RuleDescriptor("A", "t")])
    with pytest.raises(ValueError):
        RuleCatalog([RuleDescriptor("A", "t", default_severity=9)])


def test_finding_range_checks():
    with pytest.raises(ValueError):
        make(severity=0)
    with pytest.raises(ValueError):
        make(confidence=1.5)


# --------------------------------------------------------------------------
# fingerprints

def test_fingerprint_matches_independent_hash():
    assert fingerprint("R1", "a/B.java", "x  y\n z") == sha_oracle("R1", "a/B.java", "x y z")


def test_fingerprint_ignores_line_numbers():
    assert make(line=1).fingerprint == make(line=99).fingerprint
    assert make(message="a").fingerprint != make(message="b").fingerprint


def test_fixture_marks_hit_critical_findings(catalog):
    found, _ = import_findings(PROJECT / "findings" / "v1.jsonl", catalog)
    marks = read_marks(PROJECT / "critical.txt")
    hits = [f for f in found if sha_oracle(f.rule_id, f.file, f.message) in marks]
    assert hits and {f.rule_id for f in hits} <= {"SQL_INJECTION", "HardCodedCryptoKey"}
    assert summarize(found, 2004, marks).critical_count == len(hits)


# --------------------------------------------------------------------------
# selection and filtering

def test_selector_modes():
    fs = [make(rule="A", category="security"), make(rule="B", category="style"), make(rule="C", tool="u")]
    assert len(select_and_filter(fs, RuleSelector(SelectorMode.SELECTED_CATEGORIES, ["Security"]))[0]) == 1
    assert [f.rule_id for f in select_and_filter(fs, RuleSelector(SelectorMode.SELECTED_RULES,
                                                                  rules=["B", "u/C"]))[0]] == ["B", "C"]
    assert len(select_and_filter(fs, RuleSelector(exclusions=["t/A"]))[0]) == 2


def test_selector_needs_members():
    with pytest.raises(ValueError):
        RuleSelector(SelectorMode.SELECTED_RULES)
    with pytest.raises(ValueError):
        RuleSelector(SelectorMode.SELECTED_CATEGORIES)


def test_stage_counts():
    fs = [make(severity=1), make(confidence=0.2), make(file="gen/X.java"), make(message="supp"), make()]
    flt = FindingsFilter(min_severity=2, min_confidence=0.5, suppressed_fingerprints={make(message="supp").fingerprint},
                         path_excludes=["^gen/"])
    kept, removed = select_and_filter(fs, filter=flt)
    assert kept == [make()]
    assert removed == {"selector": 0, "severity": 1, "confidence": 1, "path": 1, "suppression": 1}
    assert sum(removed.values()) + len(kept) == len(fs)


def random_findings(rng, n=60):
    return [make(rule=rng.choice("ABCDE"), category=rng.choice(["security", "style", "correctness"]),
                 file=rng.choice(["a/X.java", "gen/Y.java", "b/Z.java"]), message=str(rng.randrange(20)),
                 severity=rng.randint(1, 5), confidence=round(rng.random(), 2)) for _ in range(n)]


def random_config(rng):
    mode = rng.choice(list(SelectorMode))
    sel = RuleSelector(mode, rng.sample(["security", "style", "correctness"], rng.randint(1, 3)),
                       rng.sample(list("ABCDE"), rng.randint(1, 5)), rng.sample(list("ABCDE"), rng.randint(0, 2)))
    flt = FindingsFilter(rng.randint(1, 5), round(rng.random(), 2),
                         {fingerprint("A", "a/X.java", str(k)) for k in rng.sample(range(20), rng.randint(0, 5))},
                         rng.sample(["^gen/", "^b/"], rng.randint(0, 2)))
    return sel, flt


def strengthen(rng, sel, flt):
    """Make one stage stricter."""
    sel = RuleSelector(sel.mode, list(sel.categories), list(sel.rules), list(sel.exclusions))
    flt = FindingsFilter(flt.min_severity, flt.min_confidence, set(flt.suppressed_fingerprints),
                         list(flt.path_excludes))
    step = rng.randrange(5)
    if step == 0:
        sel.exclusions.append(rng.choice("ABCDE"))
    elif step == 1:
        flt = FindingsFilter(min(5, flt.min_severity + 1), flt.min_confidence, flt.suppressed_fingerprints,
                             flt.path_excludes)
    elif step == 2:
        flt = FindingsFilter(flt.min_severity, min(1.0, flt.min_confidence + 0.1), flt.suppressed_fingerprints,
                             flt.path_excludes)
    elif step == 3:
        flt = FindingsFilter(flt.min_severity, flt.min_confidence, flt.suppressed_fingerprints,
                             flt.path_excludes + [rng.choice(["^a/", "^gen/", "^b/"])])
    else:
        flt.suppressed_fingerprints.add(fingerprint("A", "a/X.java", str(rng.randrange(20))))
    return sel, flt


@pytest.mark.parametrize("seed", range(100))
def test_stricter_filters_never_grow_the_result(seed):
    rng = random.Random(seed)
    fs = random_findings(rng)
    sel, flt = random_config(rng)
    kept, _ = select_and_filter(fs, sel, flt)
    sel2, flt2 = strengthen(rng, sel, flt)
    kept2, _ = select_and_filter(fs, sel2, flt2)
    ids = {id(f) for f in kept}
    assert len(kept2) <= len(kept)
    assert all(id(f) in ids for f in kept2)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 5), st.floats(0, 1))
def test_filter_idempotent(seed, sev, conf):
    fs = random_findings(random.Random(seed), 30)
    flt = FindingsFilter(sev, conf)
    once, _ = select_and_filter(fs, filter=flt)
    twice, _ = select_and_filter(once, filter=flt)
    assert once == twice


# --------------------------------------------------------------------------
# statistics

def test_density_per_kloc():
    fs = [make(message=str(i)) for i in range(49)]
    assert summarize(fs, 100_000).density_per_kloc == 0.49
    assert density(3, 2000) == 1.5


def test_zero_loc_density_undefined():
    r = summarize([make()], 0)
    assert r.density_per_kloc is None and r.warnings


def test_per_classification_includes_all_classes():
    r = summarize([make(classification=Classification.PEDANTRY)], 1000)
    assert r.per_classification == {"Bug": 0, "Smell": 0, "Pedantry": 1}


def test_report_round_trip_and_schema(catalog):
    found, warnings = import_findings(PROJECT / "findings" / "v2.jsonl", catalog)
    d = summarize(found, 2651, read_marks(PROJECT / "critical.txt")).to_dict()
    validate(d, "findings_report")
    assert FindingsReport.from_dict(json.loads(json.dumps(d))).to_dict() == d
    validate(found[0].to_dict(), "finding")


def test_selector_estimator():
    fs = [make(severity=1), make(severity=4)]
    est = FindingsSelector(min_severity=3).fit()
    assert est.transform(fs) == [fs[1]]
    assert est.removed_["severity"] == 1
