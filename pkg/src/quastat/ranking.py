"""Ranking analysed systems per criterion and comparing rankings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence


class RankingError(ValueError):
    pass


CRITERIA = {
    "clones": "clone_coverage",
    "density": "findings_density",
    "critical": "critical_findings",
    "arch": "arch_class_violations",
    "grade": "overall_grade",
}
CRITERION_TITLES = {
    "clone_coverage": "Clone Coverage",
    "findings_density": "Findings per kLoC",
    "critical_findings": "Critical Findings",
    "arch_class_violations": "Violating Classes",
    "overall_grade": "Overall Grade",
}


@dataclass
class SystemResult:
    system: str
    clone_coverage: float | None = None
    findings_density: float | None = None
    critical_findings: int | None = None
    arch_class_violations: int | None = None
    overall_grade: float | None = None

    def __post_init__(self) -> None:
        checks = {
            "clone_coverage": (0.0, 100.0),
            "findings_density": (0.0, float("inf")),
            "critical_findings": (0, float("inf")),
            "arch_class_violations": (0, float("inf")),
            "overall_grade": (1.0, 6.0),
        }
        for name, (lo, hi) in checks.items():
            v = getattr(self, name)
            if v is not None and not lo <= v <= hi:
                raise ValueError(f"{self.system}: {name}={v} outside [{lo}, {hi}]")

    def get(self, criterion: str):
        return getattr(self, CRITERIA.get(criterion, criterion))

    def to_dict(self) -> dict:
        return {"system": self.system, "clone_coverage": self.clone_coverage,
                "findings_density": self.findings_density, "critical_findings": self.critical_findings,
                "arch_class_violations": self.arch_class_violations, "overall_grade": self.overall_grade}

    @classmethod
    def from_dict(cls, d: Mapping) -> "SystemResult":
        if "system_result" in d:
            d = d["system_result"]
        return cls(d["system"], d.get("clone_coverage"), d.get("findings_density"),
                   d.get("critical_findings"), d.get("arch_class_violations"), d.get("overall_grade"))


@dataclass
class RankEntry:
    rank: int
    systems: list[str]
    value: float

    def to_dict(self) -> dict:
        return {"rank": self.rank, "systems": self.systems, "value": self.value}


@dataclass
class RankTable:
    criterion: str
    entries: list[RankEntry]
    excluded: list[str] = field(default_factory=list)

    @property
    def ranks(self) -> dict[str, int]:
        return {s: e.rank for e in self.entries for s in e.systems}

    @property
    def ties(self) -> list[list[str]]:
        return [e.systems for e in self.entries if len(e.systems) > 1]

    @property
    def order(self) -> list[str]:
        return [s for e in self.entries for s in e.systems]

    def to_dict(self) -> dict:
        return {"criterion": self.criterion, "entries": [e.to_dict() for e in self.entries],
                "ties": self.ties, "excluded": self.excluded}


def rank_by(results: Iterable[SystemResult], criterion: str, direction: str = "ascending") -> RankTable:
    """Rank systems by one criterion; lower values rank better by default.

    Equal values share the best rank of their group and the next group's
    rank skips past the tied systems (1, 1, 1, 4, 5).
    """
    attr = CRITERIA.get(criterion, criterion)
    if attr not in CRITERION_TITLES:
        raise RankingError(f"unknown criterion {criterion!r}; valid: {', '.join(CRITERIA)}")
    results = list(results)
    present = [(r.system, getattr(r, attr)) for r in results if getattr(r, attr) is not None]
    excluded = sorted(r.system for r in results if getattr(r, attr) is None)
    if len(present) < 2:
        raise RankingError(f"need at least two systems with {attr}, got {len(present)}")
    sign = 1 if direction == "ascending" else -1
    present.sort(key=lambda p: (sign * p[1], p[0]))
    entries: list[RankEntry] = []
    position = 0
    for system, value in present:
        position += 1
        if entries and entries[-1].value == value:
            entries[-1].systems.append(system)
        else:
            entries.append(RankEntry(position, [system], value))
    return RankTable(attr, entries, excluded)


@dataclass
class Agreement:
    concordant: int
    discordant: int
    tied: int
    shared: list[str]
    strong_shifts: list[tuple[str, int, int]]

    @property
    def full_concordance(self) -> bool:
        return self.discordant == 0

    def to_dict(self) -> dict:
        return {"concordant": self.concordant, "discordant": self.discordant, "tied": self.tied,
                "shared": self.shared,
                "strong_shifts": [{"system": s, "rank_a": a, "rank_b": b} for s, a, b in self.strong_shifts]}


def compare_rankings(a: RankTable, b: RankTable, shift: int = 2) -> Agreement:
    """Concordant/discordant system pairs and systems whose ranks move by ``shift`` or more."""
    ra, rb = a.ranks, b.ranks
    shared = sorted(set(ra) & set(rb))
    if not shared:
        raise RankingError("rankings share no systems")
    conc = disc = tied = 0
    for x, y in combinations(shared, 2):
        prod = (ra[x] - ra[y]) * (rb[x] - rb[y])
        if prod > 0:
            conc += 1
        elif prod < 0:
            disc += 1
        else:
            tied += 1
    shifts = [(s, ra[s], rb[s]) for s in shared if abs(ra[s] - rb[s]) >= shift]
    return Agreement(conc, disc, tied, shared, shifts)


def rank_all(results: Sequence[SystemResult], criteria: Iterable[str] = tuple(CRITERIA)) -> dict[str, RankTable]:
    tables = {}
    for c in criteria:
        try:
            tables[c] = rank_by(results, c)
        except RankingError:
            continue
    return tables


def _fmt(attr: str, v) -> str:
    if attr == "clone_coverage" or attr == "overall_grade":
        return f"{v:.1f}"
    if attr == "findings_density":
        return f"{v:.2f}"
    return str(int(v))


def text_matrix(tables: Mapping[str, RankTable]) -> str:
    """Ranks as rows and criteria as columns, one ``system (value)`` per cell."""
    cols = list(tables.values())
    depth = max((len(t.order) for t in cols), default=0)
    header = ["Rank"] + [CRITERION_TITLES[t.criterion] for t in cols]
    rows = [header]
    for i in range(depth):
        row = [str(i + 1)]
        for t in cols:
            cell = ""
            if i < len(t.order):
                s = t.order[i]
                value = next(e.value for e in t.entries if s in e.systems)
                cell = f"{t.ranks[s]}. {s} ({_fmt(t.criterion, value)})"
            row.append(cell)
        rows.append(row)
    widths = [max(len(r[k]) for r in rows) for k in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def load_results(paths: Iterable["str | Path"]) -> list[SystemResult]:
    out = []
    for p in paths:
        d = json.loads(Path(p).read_text())
        items = d if isinstance(d, list) else d.get("artifacts", [d]) if "artifacts" in d else [d]
        for item in items:
            out.append(SystemResult.from_dict(item))
    return out
