import json
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quastat.clones import (CloneClass, CloneConfig, CloneDetector, CloneInstance, CloneReport,
                            GappedCloneDetector, clone_trend, compute_metrics, detect_clones,
                            detect_gapped_clones, gapped_pairs_for, max_aligned, trend_of)
from quastat.schemas import validate
from quastat.source_model import corpus_from_texts

from clone_oracles import (brute_force_aligned, brute_force_classes, brute_force_gapped_pairs, lcs,
                           boundary_fixture, one_edit_fixture, random_corpus, report_classes,
                           two_edit_fixture, units_from)


def cls(*instances):
    return CloneClass("", [CloneInstance(f, (a, b)) for f, a, b in instances], "fp")


# --------------------------------------------------------------------------
# configuration

@pytest.mark.parametrize("kwargs", [{"min_length": 1}, {"max_gap_ratio": 1.0}, {"max_gap_ratio": -0.1},
                                    {"max_gaps_per_clone": -1}])
def test_config_rejects_invalid(kwargs):
    with pytest.raises(ValueError):
        CloneConfig(**kwargs)


def test_config_defaults():
    c = CloneConfig()
    assert (c.min_length, c.max_gaps_per_clone, c.max_gap_ratio) == (10, 1, 0.30)
    assert c.respect_method_boundaries is False
    assert CloneConfig(gapped=True).respect_method_boundaries is True


# --------------------------------------------------------------------------
# conventional detection

def test_two_files_same_twelve_units():
    seg = list(range(100, 112))
    r = detect_clones({"a": units_from([1, 2] + seg + [3], "a"), "b": units_from([4] + seg, "b")})
    assert len(r.classes) == 1
    assert len(r.classes[0].instances) == 2
    assert r.longest_clone == 12


def test_no_repetition():
    r = detect_clones({"a": units_from(range(50), "a"), "b": units_from(range(50, 90), "b")})
    assert r.unit_coverage == 0.0 and r.blow_up == 100.0 and r.classes == []


def test_empty_corpus():
    r = detect_clones({})
    assert (r.analysed_units, r.unit_coverage, r.blow_up) == (0, 0.0, 100.0)


def test_clone_does_not_span_files():
    seg = list(range(100, 106))
    r = detect_clones({"a": units_from(seg, "a"), "b": units_from(seg[::-1] + seg, "b"),
                       "c": units_from(seg, "c")}, CloneConfig(min_length=10))
    assert r.classes == []


@pytest.mark.parametrize("seed", range(5))
def test_matches_brute_force_oracle(seed):
    rng = random.Random(seed)
    files = random_corpus(rng, n_units=500, n_files=3, alphabet=rng.choice([4, 30]))
    units = {f: units_from(s, f) for f, s in files.items()}
    for L in (3, 10):
        assert report_classes(detect_clones(units, CloneConfig(min_length=L))) == brute_force_classes(files, L)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 3), max_size=40), min_size=1, max_size=4), st.integers(2, 6))
def test_oracle_equivalence_property(files, min_length):
    named = {f"f{i}": s for i, s in enumerate(files)}
    units = {k: units_from(v, k) for k, v in named.items()}
    assert report_classes(detect_clones(units, CloneConfig(min_length=min_length))) == \
        brute_force_classes(named, min_length)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), max_size=30), min_size=1, max_size=3))
def test_soundness_and_maximality(files):
    named = {f"f{i}": s for i, s in enumerate(files)}
    r = detect_clones({k: units_from(v, k) for k, v in named.items()}, CloneConfig(min_length=3))
    for c in r.classes:
        segs = [named[i.file][i.unit_range[0]: i.unit_range[1]] for i in c.instances]
        assert all(s == segs[0] for s in segs)
        assert len({i.key for i in c.instances}) == len(c.instances) >= 2

        def extend(offset):
            vals = set()
            for i in c.instances:
                k = i.unit_range[0] - 1 if offset < 0 else i.unit_range[1]
                seq = named[i.file]
                if not 0 <= k < len(seq):
                    return False
                vals.add(seq[k])
            return len(vals) == 1

        assert not extend(-1) and not extend(1)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 3), max_size=40), min_size=1, max_size=3), st.integers(2, 5))
def test_coverage_and_blow_up_bounds(files, min_length):
    r = detect_clones({f"f{i}": units_from(s, f"f{i}") for i, s in enumerate(files)},
                      CloneConfig(min_length=min_length))
    assert 0 <= r.cloned_units <= r.analysed_units
    assert 0.0 <= r.unit_coverage <= 100.0
    assert r.blow_up >= 100.0
    assert (r.blow_up == 100.0) == (not r.classes)
    if r.analysed_units:
        assert math.isclose(r.unit_coverage, 100.0 * r.cloned_units / r.analysed_units)


def test_canonical_order():
    rng = random.Random(3)
    files = random_corpus(rng, n_units=400, n_files=3, alphabet=5)
    r = detect_clones({f: units_from(s, f) for f, s in files.items()}, CloneConfig(min_length=4))
    keys = [(-c.length, c.instances[0].key) for c in r.classes]
    assert keys == sorted(keys)
    for c in r.classes:
        assert [i.key for i in c.instances] == sorted(i.key for i in c.instances)
    assert len({c.id for c in r.classes}) == len(r.classes)


# --------------------------------------------------------------------------
# metrics

def test_table_row_arithmetic():
    coverage, _, _, _ = compute_metrics([cls(("x", 0, 3530))], 15_900)
    assert round(coverage, 1) == 22.2


def test_single_class_metrics():
    coverage, blow_up, longest, most = compute_metrics([cls(("a", 0, 10), ("b", 0, 10))], 100)
    assert coverage == pytest.approx(20.0)
    assert blow_up == pytest.approx(100 / 90 * 100)
    assert (longest, most) == (10, 2)


def test_metrics_zero_units():
    assert compute_metrics([], 0) == (0.0, 100.0, 0, 0)
    assert compute_metrics([cls(("a", 0, 2), ("b", 0, 2))], 0)[:2] == (0.0, 100.0)


def test_overlapping_instances_count_once():
    coverage, blow_up, _, _ = compute_metrics([cls(("a", 0, 10), ("b", 0, 10)),
                                               cls(("a", 5, 12), ("c", 0, 7))], 100)
    assert coverage == pytest.approx(29.0)
    # greedy: the 10-unit class claims 10 redundant units; the 7-unit class then
    # keeps the a-instance (5 units already claimed) and c adds 7
    assert blow_up == pytest.approx(100 * 100 / (100 - 17))


@pytest.mark.parametrize("seed", range(4))
def test_blow_up_matches_rebuilt_corpus(seed):
    """With disjoint classes, the clone-free equivalent keeps one instance per class."""
    rng = random.Random(seed)
    files = {f"f{i}.java": [rng.randrange(10_000) + 10_000 * i for _ in range(300)] for i in range(3)}
    for k in range(4):
        seg = [90_000 + 100 * k + j for j in range(rng.randint(10, 25))]
        targets = rng.sample(sorted(files), 2)
        for n, name in enumerate(targets):
            at = 40 * (k + 1) + n
            files[name][at: at + len(seg)] = seg
    r = detect_clones({f: units_from(s, f) for f, s in files.items()})
    rebuilt = r.analysed_units - sum((len(c.instances) - 1) * c.length for c in r.classes)
    covered = [u for c in r.classes for i in c.instances for u in i.unit_keys()]
    assert len(covered) == len(set(covered))
    assert r.blow_up == pytest.approx(100.0 * r.analysed_units / rebuilt)


# --------------------------------------------------------------------------
# gapped detection

def test_single_edit_gives_one_gapped_class():
    r = detect_gapped_clones(one_edit_fixture())
    assert len(r.classes) == 1
    c = r.classes[0]
    assert len(c.instances) == 2
    assert all(len(i.gap_positions) == 1 for i in c.instances)
    assert c.discrepancies and r.gapped


def test_two_separated_edits_not_one_class():
    corpus = two_edit_fixture()
    r = detect_gapped_clones(corpus)
    edits = {f.path: [k for k, u in enumerate(f.units) if u.normalized_text.startswith("this")]
             for f in corpus}
    b_edits = edits["B.java"]
    assert len(b_edits) == 2
    for c in r.classes:
        for inst in c.instances:
            if inst.file == "B.java":
                assert not all(inst.unit_range[0] <= e < inst.unit_range[1] for e in b_edits)


def test_clone_straddling_methods_not_reported():
    corpus = boundary_fixture()
    r = detect_gapped_clones(corpus)
    spans = {f.path: [s.unit_range for s in f.method_spans] for f in corpus}
    assert r.classes == []
    # without the method restriction the straddling copy is a valid one-gap clone
    conv = detect_gapped_clones({f.path: f.units for f in corpus},
                                method_spans={f.path: [] for f in corpus})
    assert conv.classes == []
    assert len(spans["A.java"]) == 2


def test_gapped_instances_stay_within_methods(v3_corpus):
    r = detect_gapped_clones(v3_corpus)
    spans = {f.path: [s.unit_range for s in f.method_spans] for f in v3_corpus}
    for c in r.classes:
        for i in c.instances:
            assert any(a <= i.unit_range[0] and i.unit_range[1] <= b for a, b in spans[i.file])


def test_gap_constraints_hold_per_instance(v3_corpus):
    r = detect_gapped_clones(v3_corpus, config=CloneConfig(gapped=True))
    for c in r.classes:
        for i in c.instances:
            gaps = sorted(i.gap_positions)
            runs = sum(1 for k, g in enumerate(gaps) if k == 0 or g != gaps[k - 1] + 1)
            assert runs <= 1
            assert len(gaps) <= 0.30 * i.length_units + 1e-9
            assert all(i.unit_range[0] <= g < i.unit_range[1] for g in gaps)


def test_planted_fixture_pair_found(v3_corpus, expected):
    r = detect_gapped_clones(v3_corpus)
    a, b = expected["gapped_pair"]
    hits = [c for c in r.classes if {a, b} <= {i.file for i in c.instances} and c.is_gapped]
    assert hits


def test_gapped_pairs_match_brute_force_on_fixture(v3_corpus):
    cfg = CloneConfig(gapped=True)
    bodies = []
    for f in v3_corpus:
        for s in f.method_spans:
            bodies.append(np.array([hash(u.normalized_hash) for u in f.units[s.start:s.stop]]))
    rng = random.Random(11)
    small = [b for b in bodies if 10 <= len(b) <= 28]
    pairs = [(rng.choice(small), rng.choice(small)) for _ in range(25)]
    by_len = sorted(bodies, key=len)
    pairs.append((by_len[-1], by_len[-2]))
    for a, b in pairs:
        got = {(p.a_start, p.a_end, p.b_start, p.b_end) for p in gapped_pairs_for(a, b, False, cfg)}
        assert got == brute_force_gapped_pairs(a.tolist(), b.tolist(), False, 10, 0.30)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=0, max_size=16), st.lists(st.integers(0, 2), min_size=0, max_size=16),
       st.booleans())
def test_gapped_pairs_match_brute_force_property(a, b, same):
    if same:
        b = a
    cfg = CloneConfig(min_length=4, gapped=True, max_gaps_per_clone=1, max_gap_ratio=0.3)
    got = {(p.a_start, p.a_end, p.b_start, p.b_end)
           for p in gapped_pairs_for(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64), same, cfg)}
    assert got == brute_force_gapped_pairs(a, b, same, 4, 0.3)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=7), st.lists(st.integers(0, 2), min_size=1, max_size=7),
       st.integers(0, 3))
def test_max_aligned_matches_exhaustive_alignment(a, b, k):
    got, pairs = max_aligned(a, b, k)
    assert got == brute_force_aligned(a, b, k)
    if got >= 0:
        assert len(pairs) == got
        assert all(a[x] == b[y] for x, y in pairs)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=14), st.lists(st.integers(0, 3), min_size=1, max_size=14))
def test_max_aligned_with_many_gaps_is_anchored_lcs(a, b):
    a, b = [9] + a + [8], [9] + b + [8]
    assert max_aligned(a, b, 30)[0] == lcs(a, b)


def test_gapped_respects_larger_gap_budget():
    base = [f"r = f({', '.join('a' for _ in range(i))});" for i in range(20)]
    edited = list(base)
    edited[5] = "this.q.w = 1;"
    edited[14] = "this.q.w.e = 2;"
    src = {"A.java": "class A { void m() {\n" + "\n".join(base) + "\n} }\n",
           "B.java": "class B { void n() {\n" + "\n".join(edited) + "\n} }\n"}
    corpus = corpus_from_texts(src)
    one = detect_gapped_clones(corpus, config=CloneConfig(gapped=True, max_gaps_per_clone=1))
    two = detect_gapped_clones(corpus, config=CloneConfig(gapped=True, max_gaps_per_clone=2))
    assert max(c.length for c in two.classes) == 22
    assert max(c.length for c in one.classes) < 22


# --------------------------------------------------------------------------
# trends

def test_increasing_trend():
    assert trend_of([68.0, 77.6, 79.4]).direction == "increasing"


def test_decreasing_trend():
    assert trend_of([18.2, 15.1, 13.7]).direction == "decreasing"


def test_identical_reports_have_zero_deltas():
    r = detect_clones({"a": units_from(range(30), "a")})
    t = clone_trend([r, r, r])
    assert all(d == 0 for tr in t.values() for d in tr.deltas)
    assert {tr.direction for tr in t.values()} == {"stable"}


def test_trend_needs_two_versions():
    with pytest.raises(ValueError, match="trend needs two versions"):
        clone_trend([detect_clones({})])


# --------------------------------------------------------------------------
# serialisation and estimator front end

def test_report_round_trip_and_schema(v3_corpus):
    for r in (detect_clones(v3_corpus), detect_gapped_clones(v3_corpus)):
        d = r.to_dict()
        validate(d, "clone_report")
        again = CloneReport.from_dict(json.loads(json.dumps(d)))
        assert again.to_dict() == d


def test_instance_locations_in_report(v3_corpus):
    d = detect_clones(v3_corpus).to_dict()
    inst = d["classes"][0]["instances"][0]
    assert {"file", "start_line", "end_line"} <= set(inst)
    assert inst["start_line"] <= inst["end_line"]


def test_estimators(v3_corpus):
    det = CloneDetector(min_length=10).fit(v3_corpus)
    assert det.report_.analysed_units == sum(len(f.units) for f in v3_corpus)
    assert det.get_params()["min_length"] == 10
    g = GappedCloneDetector().fit(v3_corpus)
    assert g.report_.gapped
