"""Conventional and gapped clone detection over statement units.

Conventional clone classes are the maximal repeats of the normalised unit
sequence (one sequence per file, files never joined). They are read off the
LCP intervals of a suffix array. Gapped clones are maximal fragment pairs
inside method bodies that align with at most ``max_gaps_per_clone`` gap runs
and at most ``max_gap_ratio`` unaligned units per instance.
"""

from __future__ import annotations

import hashlib
import logging
import math
import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from sklearn.base import BaseEstimator

from .source_model import Corpus, MethodSpan, Unit
from .validation import check_corpus, check_is_fitted

logger = logging.getLogger(__name__)

_EPS = 1e-9


@dataclass(frozen=True)
class CloneConfig:
    min_length: int = 10
    gapped: bool = False
    max_gaps_per_clone: int = 1
    max_gap_ratio: float = 0.30
    respect_method_boundaries: bool | None = None

    def __post_init__(self) -> None:
        if self.min_length < 2:
            raise ValueError(f"min_length must be >= 2, got {self.min_length}")
        if not 0 <= self.max_gap_ratio < 1:
            raise ValueError(f"max_gap_ratio must be in [0, 1), got {self.max_gap_ratio}")
        if self.max_gaps_per_clone < 0:
            raise ValueError("max_gaps_per_clone must be >= 0")
        if self.respect_method_boundaries is None:
            object.__setattr__(self, "respect_method_boundaries", self.gapped)


@dataclass(frozen=True)
class CloneInstance:
    file: str
    unit_range: tuple[int, int]
    start_line: int = 0
    end_line: int = 0
    gap_positions: tuple[int, ...] = ()

    @property
    def length_units(self) -> int:
        return self.unit_range[1] - self.unit_range[0]

    @property
    def key(self) -> tuple[str, int, int]:
        return (self.file, self.unit_range[0], self.unit_range[1])

    def unit_keys(self) -> Iterable[tuple[str, int]]:
        return ((self.file, i) for i in range(*self.unit_range))

    def to_dict(self) -> dict:
        d = {"file": self.file, "start_unit": self.unit_range[0], "end_unit": self.unit_range[1],
             "start_line": self.start_line, "end_line": self.end_line,
             "length_units": self.length_units}
        if self.gap_positions:
            d["gap_positions"] = list(self.gap_positions)
        return d


@dataclass(frozen=True)
class Discrepancy:
    """Unaligned units between two instances of a gapped clone class."""

    a: tuple[str, int, int]
    b: tuple[str, int, int]
    gaps_a: tuple[int, ...]
    gaps_b: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"a": list(self.a), "b": list(self.b),
                "gaps_a": list(self.gaps_a), "gaps_b": list(self.gaps_b)}


@dataclass
class CloneClass:
    id: str
    instances: list[CloneInstance]
    normalized_fingerprint: str
    discrepancies: list[Discrepancy] = field(default_factory=list)

    @property
    def length(self) -> int:
        return max(i.length_units for i in self.instances)

    @property
    def is_gapped(self) -> bool:
        return any(i.gap_positions for i in self.instances) or bool(self.discrepancies)

    def to_dict(self) -> dict:
        d = {"id": self.id, "fingerprint": self.normalized_fingerprint, "length": self.length,
             "instances": [i.to_dict() for i in self.instances]}
        if self.discrepancies:
            d["discrepancies"] = [x.to_dict() for x in self.discrepancies]
        return d


@dataclass
class CloneReport:
    analysed_units: int
    cloned_units: int
    unit_coverage: float
    blow_up: float
    longest_clone: int
    most_instances: int
    classes: list[CloneClass]
    gapped: bool = False
    file_units: dict[str, int] = field(default_factory=dict)
    config: CloneConfig | None = None

    def to_dict(self) -> dict:
        cfg = self.config or CloneConfig()
        return {
            "analysed_units": self.analysed_units,
            "cloned_units": self.cloned_units,
            "unit_coverage": round(self.unit_coverage, 1),
            "blow_up": round(self.blow_up, 1),
            "longest_clone": self.longest_clone,
            "most_instances": self.most_instances,
            "gapped": self.gapped,
            "config": {"min_length": cfg.min_length, "max_gaps": cfg.max_gaps_per_clone,
                       "max_gap_ratio": cfg.max_gap_ratio},
            "file_units": dict(sorted(self.file_units.items())),
            "classes": [c.to_dict() for c in self.classes],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "CloneReport":
        classes = []
        for c in d.get("classes", []):
            instances = [CloneInstance(i["file"], (i["start_unit"], i["end_unit"]),
                                       i.get("start_line", 0), i.get("end_line", 0),
                                       tuple(i.get("gap_positions", ())))
                         for i in c["instances"]]
            discrepancies = [Discrepancy(tuple(x["a"]), tuple(x["b"]), tuple(x["gaps_a"]),
                                         tuple(x["gaps_b"])) for x in c.get("discrepancies", [])]
            classes.append(CloneClass(c["id"], instances, c["fingerprint"], discrepancies))
        cov, blow, longest, most = compute_metrics(classes, d["analysed_units"])
        cfg = d.get("config", {})
        return cls(d["analysed_units"], d["cloned_units"], cov, blow, longest, most, classes,
                   d.get("gapped", False), dict(d.get("file_units", {})),
                   CloneConfig(cfg.get("min_length", 10), d.get("gapped", False),
                               cfg.get("max_gaps", 1), cfg.get("max_gap_ratio", 0.3)))


def compute_metrics(classes: Sequence[CloneClass], analysed_units: int) -> tuple[float, float, int, int]:
    """Return ``(unit_coverage, blow_up, longest_clone, most_instances)``.

    Coverage counts every cloned unit once. Blow-up claims units greedily,
    longest classes first: per class, the instance with the most units
    already claimed stays as representative and the unclaimed units of all
    other instances count as redundant.
    """
    if not classes:
        return 0.0, 100.0, 0, 0
    longest = max(c.length for c in classes)
    most = max(len(c.instances) for c in classes)
    if analysed_units <= 0:
        return 0.0, 100.0, longest, most
    cloned: set[tuple[str, int]] = set()
    for c in classes:
        for inst in c.instances:
            cloned.update(inst.unit_keys())
    claimed: set[tuple[str, int]] = set()
    redundant = 0
    for c in sorted(classes, key=lambda c: -c.length):
        insts = sorted(c.instances, key=lambda i: i.key)
        overlap = [sum(1 for u in i.unit_keys() if u in claimed) for i in insts]
        rep = max(range(len(insts)), key=lambda k: (overlap[k], -k))
        for k, inst in enumerate(insts):
            for u in inst.unit_keys():
                if u not in claimed:
                    claimed.add(u)
                    if k != rep:
                        redundant += 1
    coverage = 100.0 * len(cloned) / analysed_units
    non_redundant = analysed_units - redundant
    blow_up = 100.0 * analysed_units / non_redundant if non_redundant > 0 else math.inf
    return coverage, blow_up, longest, most


def cloned_unit_count(classes: Iterable[CloneClass], files: "Iterable[str] | None" = None) -> int:
    wanted = None if files is None else set(files)
    seen = set()
    for c in classes:
        for inst in c.instances:
            if wanted is None or inst.file in wanted:
                seen.update(inst.unit_keys())
    return len(seen)


def scoped_coverage(report: CloneReport, pattern: str) -> float:
    """Unit coverage restricted to files whose path matches ``pattern``."""
    rx = re.compile(pattern)
    files = [f for f in report.file_units if rx.search(f)]
    analysed = sum(report.file_units[f] for f in files)
    if analysed == 0:
        return 0.0
    return 100.0 * cloned_unit_count(report.classes, files) / analysed


# --------------------------------------------------------------------------
# suffix array machinery

def suffix_array(seq: np.ndarray) -> np.ndarray:
    """Suffix array by prefix doubling."""
    n = len(seq)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    _, rank = np.unique(seq, return_inverse=True)
    rank = rank.astype(np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if k < n:
            second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        r1, r2 = rank[order], second[order]
        change = np.empty(n, dtype=np.int64)
        change[0] = 0
        change[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[order] = np.cumsum(change)
        rank = new_rank
        if rank.max() == n - 1 or k >= n:
            return order
        k *= 2


def lcp_array(seq: Sequence[int], sa: Sequence[int]) -> list[int]:
    """Kasai's algorithm; ``lcp[i]`` is the LCP of suffixes ``sa[i-1]`` and ``sa[i]``."""
    n = len(sa)
    rank = [0] * n
    for i, p in enumerate(sa):
        rank[p] = i
    lcp = [0] * n
    h = 0
    for p in range(n):
        r = rank[p]
        if r > 0:
            q = sa[r - 1]
            while p + h < n and q + h < n and seq[p + h] == seq[q + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


def maximal_repeats(seq: Sequence[int], min_length: int,
                    left: Sequence[int] | None = None) -> list[tuple[int, list[int]]]:
    """All left- and right-maximal repeats of length >= ``min_length``.

    ``seq`` must keep distinct sequences apart with unique separator values.
    ``left[p]`` is the symbol preceding position ``p``; it defaults to
    ``seq[p-1]``. Returns ``(length, sorted start positions)`` pairs.
    """
    arr = np.asarray(seq, dtype=np.int64)
    n = len(arr)
    if n == 0:
        return []
    sa = suffix_array(arr).tolist()
    lcp = lcp_array(arr.tolist(), sa)
    if left is None:
        left = [min(int(arr.min()), 0) - 1] + arr[:-1].tolist()  # sentinel unlike any separator
    bwt = [left[p] for p in sa]
    # diverse[i]: number of positions j <= i with bwt[j] != bwt[j-1]
    diverse = [0] * n
    for i in range(1, n):
        diverse[i] = diverse[i - 1] + (bwt[i] != bwt[i - 1])
    out = []
    stack = [(0, 0)]  # (lcp value, left bound)
    for i in range(1, n + 1):
        cur = lcp[i] if i < n else -1
        lb = i - 1
        while stack and cur < stack[-1][0]:
            ell, lb = stack.pop()
            rb = i - 1
            if ell >= min_length and diverse[rb] - diverse[lb] > 0:
                out.append((ell, sorted(sa[lb: rb + 1])))
        if stack and cur > stack[-1][0]:
            stack.append((cur, lb))
    return out


# --------------------------------------------------------------------------
# conventional detection

def _fingerprint(hashes: Iterable[str]) -> str:
    return hashlib.blake2b("|".join(hashes).encode(), digest_size=8).hexdigest()


def _instance(units: Sequence[Unit], start: int, stop: int, gaps: Iterable[int] = ()) -> CloneInstance:
    return CloneInstance(units[start].file, (start, stop), units[start].start_line,
                         units[stop - 1].end_line, tuple(sorted(gaps)))


def _canonical(classes: list[CloneClass]) -> list[CloneClass]:
    for c in classes:
        c.instances.sort(key=lambda i: i.key)
    classes.sort(key=lambda c: (-c.length, c.instances[0].key, len(c.instances)))
    width = max(4, len(str(len(classes))))
    for k, c in enumerate(classes, 1):
        c.id = f"c{k:0{width}d}"
    return classes


def _as_unit_map(units: "Corpus | Mapping[str, Sequence[Unit]]") -> dict[str, list[Unit]]:
    if isinstance(units, Corpus):
        return units.unit_sequences()
    return {k: list(v) for k, v in units.items()}


def detect_clones(units: "Corpus | Mapping[str, Sequence[Unit]]",
                  config: CloneConfig | None = None) -> CloneReport:
    """Find all maximal repeated unit subsequences of at least ``min_length``."""
    config = config or CloneConfig()
    by_file = _as_unit_map(units)
    files = sorted(by_file)
    symbols: dict[str, int] = {}
    seq: list[int] = []
    owner: list[tuple[int, int]] = []  # position -> (file index, unit index)
    for fi, path in enumerate(files):
        for ui, u in enumerate(by_file[path]):
            seq.append(symbols.setdefault(u.normalized_hash, len(symbols)))
            owner.append((fi, ui))
        owner.append((fi, -1))
        seq.append(-1 - fi)  # unique separator
    repeats = maximal_repeats(seq, config.min_length)
    classes = []
    for length, starts in repeats:
        instances = []
        for p in starts:
            fi, ui = owner[p]
            instances.append(_instance(by_file[files[fi]], ui, ui + length))
        fi, ui = owner[starts[0]]
        fp = _fingerprint(u.normalized_hash for u in by_file[files[fi]][ui: ui + length])
        classes.append(CloneClass("", instances, fp))
    return _report(classes, {f: len(by_file[f]) for f in files}, config, gapped=False)


def _report(classes: list[CloneClass], file_units: dict[str, int], config: CloneConfig,
            gapped: bool) -> CloneReport:
    classes = _canonical(classes)
    analysed = sum(file_units.values())
    cov, blow, longest, most = compute_metrics(classes, analysed)
    return CloneReport(analysed, cloned_unit_count(classes), cov, blow, longest, most, classes,
                       gapped, file_units, config)


# --------------------------------------------------------------------------
# gapped detection

@dataclass(frozen=True)
class GappedPair:
    """Fragment pair in method-local coordinates (inclusive ends)."""

    a_method: int
    b_method: int
    a_start: int
    a_end: int
    b_start: int
    b_end: int
    gaps_a: tuple[int, ...]
    gaps_b: tuple[int, ...]

    @property
    def size(self) -> int:
        return (self.a_end - self.a_start) + (self.b_end - self.b_start) + 2

    def contains(self, other: "GappedPair") -> bool:
        return (self.a_method == other.a_method and self.b_method == other.b_method
                and self.a_start <= other.a_start and self.a_end >= other.a_end
                and self.b_start <= other.b_start and self.b_end >= other.b_end)


def _runs(eq: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Maximal diagonal runs of ``eq`` as (start rows, start cols, lengths)."""
    left = eq.copy()
    left[1:, 1:] &= ~eq[:-1, :-1]
    right = eq.copy()
    right[:-1, :-1] &= ~eq[1:, 1:]
    sx, sy = np.nonzero(left)
    ex, ey = np.nonzero(right)
    # on each diagonal starts and ends alternate, so sorting pairs them up
    so = np.lexsort((sx, sy - sx))
    eo = np.lexsort((ex, ey - ex))
    sx, sy, ex = sx[so], sy[so], ex[eo]
    return sx, sy, ex - sx + 1


def max_aligned(a: Sequence, b: Sequence, max_gaps: int) -> tuple[int, list[tuple[int, int]]]:
    """Most matched positions in an alignment of ``a`` and ``b`` with at most
    ``max_gaps`` gap runs, anchored at both ends.

    Returns ``(matches, matched index pairs)``; ``(-1, [])`` when the first or
    last elements differ.
    """
    la, lb = len(a), len(b)
    if la == 0 or lb == 0 or a[0] != b[0] or a[-1] != b[-1]:
        return -1, []
    neg = -1
    best = [[[neg] * lb for _ in range(la)] for _ in range(max_gaps + 1)]
    # prefix maximum over the rectangle [0..x] x [0..y] of best[g], with argmax
    pre = [[[(neg, -1, -1)] * lb for _ in range(la)] for _ in range(max_gaps + 1)]
    back: dict[tuple[int, int, int], tuple[int, int, int]] = {}
    for g in range(max_gaps + 1):
        bg, pg = best[g], pre[g]
        prev_pre = pre[g - 1] if g else None
        for x in range(la):
            ax = a[x]
            for y in range(lb):
                v = neg
                if g and best[g - 1][x][y] >= 0:
                    v = best[g - 1][x][y]
                    back[(g, x, y)] = back[(g - 1, x, y)]
                if ax == b[y]:
                    if x == 0 and y == 0:
                        v = 1
                        back[(g, x, y)] = (-1, -1, -1)
                    elif x > 0 and y > 0:
                        cont = bg[x - 1][y - 1]
                        if cont >= 0 and cont + 1 > v:
                            v = cont + 1
                            back[(g, x, y)] = (g, x - 1, y - 1)
                        if prev_pre is not None:
                            pv, px, py = prev_pre[x - 1][y - 1]
                            if pv >= 0 and pv + 1 > v:
                                v = pv + 1
                                back[(g, x, y)] = (g - 1, px, py)
                bg[x][y] = v
                cand = (v, x, y)
                if x > 0 and pg[x - 1][y][0] > cand[0]:
                    cand = pg[x - 1][y]
                if y > 0 and pg[x][y - 1][0] > cand[0]:
                    cand = pg[x][y - 1]
                pg[x][y] = cand
    g_best = max(range(max_gaps + 1), key=lambda g: (best[g][la - 1][lb - 1], -g))
    total = best[g_best][la - 1][lb - 1]
    if total < 0:
        return -1, []
    pairs = []
    state = (g_best, la - 1, lb - 1)
    while state[1] >= 0:
        pairs.append((state[1], state[2]))
        state = back[state]
    pairs.reverse()
    return total, pairs


def _gap_runs(positions: Sequence[int]) -> int:
    runs, prev = 0, None
    for p in sorted(positions):
        if prev is None or p != prev + 1:
            runs += 1
        prev = p
    return runs


def _ratio_ok(unaligned: int, length: int, ratio: float) -> bool:
    return unaligned <= ratio * length + _EPS


def gapped_pairs_for(a: np.ndarray, b: np.ndarray, same: bool, config: CloneConfig,
                     a_method: int = 0, b_method: int = 0) -> list[GappedPair]:
    """Maximal gapped fragment pairs between two method bodies.

    With ``same`` the two bodies are one method; fragments then satisfy
    ``a_start < b_start``.
    """
    k, r, min_len = config.max_gaps_per_clone, config.max_gap_ratio, config.min_length
    la, lb = len(a), len(b)
    if la < min_len or lb < min_len:
        return []
    eq = a[:, None] == b[None, :]
    sx, sy, runs = _runs(eq)
    if len(runs) == 0:
        return []
    ex, ey = sx + runs - 1, sy + runs - 1
    valid: list[GappedPair] = []
    if k <= 1:
        # matched units never exceed prefix run + suffix run, which rules out most runs
        need = math.ceil((1 - r) * min_len - _EPS)
        top = int(runs.max())
        keep = runs + top >= need
        if not keep.all():
            sx, sy, runs, ex, ey = sx[keep], sy[keep], runs[keep], ex[keep], ey[keep]
        # every (run start, run end) combination is a candidate fragment pair
        for lo in range(0, len(sx), 256):
            x, y, p0 = sx[lo:lo + 256, None], sy[lo:lo + 256, None], runs[lo:lo + 256, None]
            len_a = ex[None, :] - x + 1
            len_b = ey[None, :] - y + 1
            shorter = np.minimum(len_a, len_b)
            p = np.minimum(p0, shorter)
            matched = np.minimum(p + np.minimum(runs[None, :], shorter), shorter)
            if k == 0:
                matched = np.where((p >= len_a) & (len_a == len_b), matched, -1)
            ok = ((len_a >= min_len) & (len_b >= min_len) & (matched > 0)
                  & (len_a - matched <= r * len_a + _EPS) & (len_b - matched <= r * len_b + _EPS))
            if same:
                ok &= x < y
            for i, j in zip(*np.nonzero(ok)):
                valid.append(_pair_with_gaps(a, b, int(sx[lo + i]), int(ex[j]), int(sy[lo + i]), int(ey[j]),
                                             int(runs[lo + i]), int(runs[j]), k, a_method, b_method))
    else:
        for si in range(len(sx)):
            x, y = int(sx[si]), int(sy[si])
            if same and x >= y:
                continue
            sel = (ex - x + 1 >= min_len) & (ey - y + 1 >= min_len)
            for x2, y2 in zip(ex[sel], ey[sel]):
                x2, y2 = int(x2), int(y2)
                len_a, len_b = x2 - x + 1, y2 - y + 1
                m = max_aligned(a[x:x2 + 1], b[y:y2 + 1], k)[0]
                if m > 0 and _ratio_ok(len_a - m, len_a, r) and _ratio_ok(len_b - m, len_b, r):
                    valid.append(_pair_with_gaps(a, b, x, x2, y, y2, 0, 0, k, a_method, b_method))
    valid.sort(key=lambda p: (-p.size, p.a_start, p.b_start, p.a_end, p.b_end))
    kept: list[GappedPair] = []
    for cand in valid:
        if not any(big.contains(cand) for big in kept):
            kept.append(cand)
    return kept


def _pair_with_gaps(a, b, x, x2, y, y2, prefix, suffix, k, am, bm) -> GappedPair:
    len_a, len_b = x2 - x + 1, y2 - y + 1
    if k <= 1:
        shorter = min(len_a, len_b)
        p = min(prefix, shorter)
        s = min(suffix, shorter - p)
        gaps_a = tuple(range(x + p, x2 + 1 - s))
        gaps_b = tuple(range(y + p, y2 + 1 - s))
    else:
        _, pairs = max_aligned(a[x:x2 + 1], b[y:y2 + 1], k)
        ma = {i for i, _ in pairs}
        mb = {j for _, j in pairs}
        gaps_a = tuple(x + i for i in range(len_a) if i not in ma)
        gaps_b = tuple(y + j for j in range(len_b) if j not in mb)
    return GappedPair(am, bm, x, x2, y, y2, gaps_a, gaps_b)


def _method_bodies(by_file: Mapping[str, Sequence[Unit]],
                   spans: Mapping[str, Sequence[MethodSpan]]) -> list[tuple[str, int, int]]:
    bodies = []
    for path in sorted(spans):
        for sp in sorted(spans[path], key=lambda s: s.unit_range):
            if sp.stop > sp.start:
                bodies.append((path, sp.start, sp.stop))
    return bodies


def candidate_method_pairs(seqs: Sequence[np.ndarray], q: int, min_length: int) -> list[tuple[int, int]]:
    """Method pairs (i <= j) sharing a ``q``-gram of unit symbols."""
    index: dict[tuple, list[int]] = defaultdict(list)
    for mi, s in enumerate(seqs):
        if len(s) < min_length:
            continue
        lst = s.tolist()
        for i in range(len(lst) - q + 1):
            index[tuple(lst[i: i + q])].append(mi)
    pairs: set[tuple[int, int]] = set()
    for members in index.values():
        if len(members) < 2:
            continue
        ms = sorted(set(members))
        if len(ms) < len(members):
            # a repeated q-gram inside one method: it may clone itself
            pairs.update((m, m) for m in ms if members.count(m) > 1)
        for i, m1 in enumerate(ms):
            for m2 in ms[i + 1:]:
                pairs.add((m1, m2))
    return sorted(pairs)


def detect_gapped_clones(units: "Corpus | Mapping[str, Sequence[Unit]]",
                         method_spans: "Mapping[str, Sequence[MethodSpan]] | None" = None,
                         config: CloneConfig | None = None) -> CloneReport:
    """Gapped clone detection restricted to method bodies."""
    config = config or CloneConfig(gapped=True)
    if not config.gapped:
        config = CloneConfig(config.min_length, True, config.max_gaps_per_clone,
                             config.max_gap_ratio, True)
    if isinstance(units, Corpus):
        if method_spans is None:
            method_spans = {f.path: f.method_spans for f in units.files}
        by_file = units.unit_sequences()
    else:
        by_file = {k: list(v) for k, v in units.items()}
        if method_spans is None:
            raise ValueError("gapped detection needs method spans")
    bodies = _method_bodies(by_file, method_spans)
    symbols: dict[str, int] = {}
    seqs = []
    for path, start, stop in bodies:
        seqs.append(np.array([symbols.setdefault(u.normalized_hash, len(symbols))
                              for u in by_file[path][start:stop]], dtype=np.int64))
    file_units: dict[str, int] = defaultdict(int)
    for path, start, stop in bodies:
        file_units[path] += stop - start
    for path in by_file:
        file_units.setdefault(path, 0)
    k = config.max_gaps_per_clone
    q = max(1, math.ceil((1 - config.max_gap_ratio) * config.min_length / (k + 1) - _EPS))
    pairs: list[GappedPair] = []
    for i, j in candidate_method_pairs(seqs, q, config.min_length):
        pairs.extend(gapped_pairs_for(seqs[i], seqs[j], i == j, config, i, j))
    classes = _classes_from_pairs(pairs, bodies, by_file, config)
    return _report(classes, dict(file_units), config, gapped=True)


def _classes_from_pairs(pairs: Sequence[GappedPair], bodies, by_file, config: CloneConfig) -> list[CloneClass]:
    """Merge pairs sharing an identical instance, keeping per-instance gap limits."""

    def absolute(method: int, lo: int, hi: int) -> tuple[str, int, int]:
        path, off, _ = bodies[method]
        return (path, off + lo, off + hi + 1)

    groups: list[dict] = []
    owner: dict[tuple[str, int, int], int] = {}

    def acceptable(gaps: dict) -> bool:
        for key, g in gaps.items():
            length = key[2] - key[1]
            if _gap_runs(g) > config.max_gaps_per_clone or not _ratio_ok(len(g), length, config.max_gap_ratio):
                return False
        return True

    ordered = sorted(pairs, key=lambda p: (-p.size, bodies[p.a_method][:2], p.a_start,
                                           bodies[p.b_method][:2], p.b_start))
    for p in ordered:
        ka = absolute(p.a_method, p.a_start, p.a_end)
        kb = absolute(p.b_method, p.b_start, p.b_end)
        ga = {bodies[p.a_method][1] + g for g in p.gaps_a}
        gb = {bodies[p.b_method][1] + g for g in p.gaps_b}
        disc = Discrepancy(ka, kb, tuple(sorted(ga)), tuple(sorted(gb)))
        targets = sorted({owner[x] for x in (ka, kb) if x in owner})
        merged = None
        if targets:
            gaps: dict = {}
            for t in targets:
                for key, g in groups[t]["gaps"].items():
                    gaps.setdefault(key, set()).update(g)
            gaps.setdefault(ka, set()).update(ga)
            gaps.setdefault(kb, set()).update(gb)
            if acceptable(gaps):
                merged = targets[0]
                groups[merged]["gaps"] = gaps
                groups[merged]["disc"].append(disc)
                for t in targets[1:]:
                    groups[merged]["disc"].extend(groups[t]["disc"])
                    groups[t] = None
                for key in gaps:
                    owner[key] = merged
        if merged is None:
            groups.append({"gaps": {ka: set(ga), kb: set(gb)}, "disc": [disc]})
            for key in (ka, kb):
                owner.setdefault(key, len(groups) - 1)
    classes = []
    for g in groups:
        if g is None:
            continue
        instances = [_instance(by_file[key[0]], key[1], key[2], gaps)
                     for key, gaps in sorted(g["gaps"].items())]
        rep = instances[0]
        rep_units = by_file[rep.file][rep.unit_range[0]: rep.unit_range[1]]
        gapset = set(rep.gap_positions)
        fp = _fingerprint(u.normalized_hash for off, u in enumerate(rep_units, rep.unit_range[0])
                          if off not in gapset)
        discs = g["disc"] if any(d.gaps_a or d.gaps_b for d in g["disc"]) else []
        classes.append(CloneClass("", instances, fp, sorted(discs, key=lambda d: (d.a, d.b))))
    return classes


# --------------------------------------------------------------------------
# trends

TREND_METRICS = ("analysed_units", "cloned_units", "unit_coverage", "blow_up",
                 "longest_clone", "most_instances")


@dataclass
class MetricTrend:
    metric: str
    values: list[float]
    deltas: list[float]
    steps: list[str]
    direction: str

    def to_dict(self) -> dict:
        return {"metric": self.metric, "values": self.values, "deltas": self.deltas,
                "steps": self.steps, "direction": self.direction}


def trend_of(values: Sequence[float], metric: str = "value") -> MetricTrend:
    if len(values) < 2:
        raise ValueError("trend needs two versions")
    deltas = [round(b - a, 10) for a, b in zip(values, values[1:])]
    steps = ["up" if d > 0 else "down" if d < 0 else "flat" for d in deltas]
    if all(s == "flat" for s in steps):
        direction = "stable"
    elif all(s in ("up", "flat") for s in steps):
        direction = "increasing"
    elif all(s in ("down", "flat") for s in steps):
        direction = "decreasing"
    else:
        direction = "mixed"
    return MetricTrend(metric, list(values), deltas, steps, direction)


def clone_trend(reports: "Sequence[CloneReport] | Mapping[str, CloneReport]") -> dict[str, MetricTrend]:
    """Per-metric deltas and direction flags across consecutive versions."""
    seq = list(reports.values()) if isinstance(reports, Mapping) else list(reports)
    if len(seq) < 2:
        raise ValueError("trend needs two versions")
    return {m: trend_of([getattr(r, m) for r in seq], m) for m in TREND_METRICS}


# --------------------------------------------------------------------------
# estimator front ends

class CloneDetector(BaseEstimator):
    """Conventional (or gapped) clone detection with an estimator interface.

    ``fit`` takes a corpus (or a directory path) and stores the report in
    ``report_``; ``classes_`` and the metric attributes mirror it.
    """

    def __init__(self, min_length=10, gapped=False, max_gaps=1, max_gap_ratio=0.30):
        self.min_length = min_length
        self.gapped = gapped
        self.max_gaps = max_gaps
        self.max_gap_ratio = max_gap_ratio

    def _config(self) -> CloneConfig:
        return CloneConfig(self.min_length, self.gapped, self.max_gaps, self.max_gap_ratio)

    def fit(self, X, y=None):
        corpus = check_corpus(X)
        config = self._config()
        if config.gapped:
            self.report_ = detect_gapped_clones(corpus, config=config)
        else:
            self.report_ = detect_clones(corpus, config)
        self.classes_ = self.report_.classes
        self.unit_coverage_ = self.report_.unit_coverage
        self.blow_up_ = self.report_.blow_up
        return self

    def transform(self, X=None):
        check_is_fitted(self, "report_")
        return self.report_.to_dict()

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()


class GappedCloneDetector(CloneDetector):
    def __init__(self, min_length=10, gapped=True, max_gaps=1, max_gap_ratio=0.30):
        super().__init__(min_length, gapped, max_gaps, max_gap_ratio)
