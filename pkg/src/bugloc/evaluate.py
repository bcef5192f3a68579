"""Retrieval metrics (Hit@K, AP@K/MAP@K, MRR@K, query effectiveness),
goldset handling, and the batch benchmark comparing reformulated queries
against baseline queries.

Conventions for queries whose gold file never shows up: they contribute 0 to
MAP and MRR, have infinite effectiveness, and count as worsened only when
the other side of a comparison is finite (otherwise preserved).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import GoldsetError, ParameterError, QueryError
from .index import CorpusIndex, RankedList, search
from .pipeline import Settings, baseline_tokens, reformulate_report
from .reports import BugReport, ReportClass, classify

INFINITE_RANK = math.inf


@dataclass(frozen=True)
class GoldSet:
    entries: dict[str, frozenset[str]]

    def __contains__(self, report_id: str) -> bool:
        return report_id in self.entries


def load_goldset(path: str | Path) -> GoldSet:
    """Read a TSV goldset: ``report_id<TAB>path1,path2,...`` per line.
    Paths are normalized to forward slashes."""
    entries: dict[str, frozenset[str]] = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise GoldsetError(f"cannot read goldset file: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        if "\t" not in line:
            raise GoldsetError(f"{path}:{lineno}: expected 'id<TAB>paths'")
        report_id, raw_paths = line.split("\t", 1)
        paths = frozenset(
            p.strip().replace("\\", "/") for p in raw_paths.split(",") if p.strip()
        )
        if not report_id.strip() or not paths:
            raise GoldsetError(f"{path}:{lineno}: empty id or path set")
        if report_id.strip() in entries:
            raise GoldsetError(f"{path}:{lineno}: duplicate id {report_id.strip()!r}")
        entries[report_id.strip()] = paths
    return GoldSet(entries=entries)


def _paths(results: RankedList | Sequence[str]) -> list[str]:
    if isinstance(results, RankedList):
        return results.paths()
    return list(results)


def hit_at_k(results: RankedList | Sequence[str], gold: Iterable[str], k: int) -> bool:
    """True iff any of the first k results is a gold file."""
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    gold = set(gold)
    return any(path in gold for path in _paths(results)[:k])


def average_precision_at_k(
    results: RankedList | Sequence[str], gold: Iterable[str], k: int
) -> float:
    """Mean of precision-at-hit over the top k positions, divided by
    min(|gold|, k) so the value stays within [0, 1]."""
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    gold = set(gold)
    if not gold:
        raise ParameterError("average precision needs a non-empty gold set")
    paths = _paths(results)[:k]
    hits = 0
    total = 0.0
    for position, path in enumerate(paths, 1):
        if path in gold:
            hits += 1
            total += hits / position
    return total / min(len(gold), k)


def reciprocal_rank_at_k(
    results: RankedList | Sequence[str], gold: Iterable[str], k: int
) -> float:
    """1/rank of the first gold hit within the top k, else 0."""
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    gold = set(gold)
    for position, path in enumerate(_paths(results)[:k], 1):
        if path in gold:
            return 1.0 / position
    return 0.0


def mean_metrics(per_query: Sequence[float]) -> float:
    """Arithmetic mean of per-query metric values."""
    if not per_query:
        raise ParameterError("cannot average an empty metric list")
    return sum(per_query) / len(per_query)


def query_effectiveness(results: RankedList | Sequence[str], gold: Iterable[str]) -> float:
    """1-based rank of the first gold file in the full result list, or
    infinity when it never appears."""
    gold = set(gold)
    for position, path in enumerate(_paths(results), 1):
        if path in gold:
            return float(position)
    return INFINITE_RANK


@dataclass(frozen=True)
class ComparisonReport:
    improved: int
    worsened: int
    preserved: int
    mean_rank_gain: float | None   # mean (reformulated - baseline) over improved pairs, negative
    mean_rank_loss: float | None   # mean (reformulated - baseline) over worsened pairs, positive

    def to_dict(self) -> dict:
        return {
            "improved": self.improved,
            "worsened": self.worsened,
            "preserved": self.preserved,
            "mean_rank_gain": self.mean_rank_gain,
            "mean_rank_loss": self.mean_rank_loss,
        }


def compare_effectiveness(
    reformulated_qe: dict[str, float], baseline_qe: dict[str, float]
) -> ComparisonReport:
    """Count per-query improvements (reformulated rank strictly better),
    worsenings, and preservations. Mean rank differences are computed over
    the pairs where both ranks are finite."""
    if set(reformulated_qe) != set(baseline_qe):
        raise ParameterError("effectiveness maps cover different query sets")
    improved: list[tuple[float, float]] = []
    worsened: list[tuple[float, float]] = []
    preserved = 0
    for report_id in reformulated_qe:
        ref, base = reformulated_qe[report_id], baseline_qe[report_id]
        if ref < base:
            improved.append((ref, base))
        elif ref > base:
            worsened.append((ref, base))
        else:
            preserved += 1

    def finite_mean_diff(pairs: list[tuple[float, float]]) -> float | None:
        finite = [r - b for r, b in pairs if math.isfinite(r) and math.isfinite(b)]
        return sum(finite) / len(finite) if finite else None

    return ComparisonReport(
        improved=len(improved),
        worsened=len(worsened),
        preserved=preserved,
        mean_rank_gain=finite_mean_diff(improved),
        mean_rank_loss=finite_mean_diff(worsened),
    )


@dataclass(frozen=True)
class MetricsReport:
    query_count: int
    hit_at: dict[int, float]
    map_at: dict[int, float]
    mrr_at: dict[int, float]
    per_query_effectiveness: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "queries": self.query_count,
            "hit_at": {str(k): v for k, v in sorted(self.hit_at.items())},
            "map_at": {str(k): v for k, v in sorted(self.map_at.items())},
            "mrr_at": {str(k): v for k, v in sorted(self.mrr_at.items())},
            "effectiveness": {
                rid: (None if math.isinf(rank) else int(rank))
                for rid, rank in sorted(self.per_query_effectiveness.items())
            },
        }


def compute_metrics(
    runs: Sequence[tuple[str, RankedList | Sequence[str], frozenset[str]]],
    ks: Sequence[int],
) -> MetricsReport:
    """Aggregate (query_id, results, gold) triples into one report."""
    hit_at: dict[int, float] = {}
    map_at: dict[int, float] = {}
    mrr_at: dict[int, float] = {}
    for k in ks:
        hit_at[k] = mean_metrics([float(hit_at_k(r, g, k)) for _, r, g in runs])
        map_at[k] = mean_metrics([average_precision_at_k(r, g, k) for _, r, g in runs])
        mrr_at[k] = mean_metrics([reciprocal_rank_at_k(r, g, k) for _, r, g in runs])
    effectiveness = {rid: query_effectiveness(r, g) for rid, r, g in runs}
    return MetricsReport(
        query_count=len(runs),
        hit_at=hit_at,
        map_at=map_at,
        mrr_at=mrr_at,
        per_query_effectiveness=effectiveness,
    )


MODES = ("baseline", "blizzard", "both")


@dataclass(frozen=True)
class BenchmarkResult:
    ks: tuple[int, ...]
    baseline: dict[str, MetricsReport] | None   # "overall" plus one entry per class
    reformulated: dict[str, MetricsReport] | None
    comparison: dict[str, ComparisonReport] | None
    skipped: tuple[str, ...]

    def to_dict(self) -> dict:
        def section(reports: dict[str, MetricsReport] | None) -> dict | None:
            if reports is None:
                return None
            return {key: rep.to_dict() for key, rep in reports.items()}

        return {
            "ks": list(self.ks),
            "baseline": section(self.baseline),
            "reformulated": section(self.reformulated),
            "comparison": (
                None
                if self.comparison is None
                else {key: rep.to_dict() for key, rep in self.comparison.items()}
            ),
            "skipped": list(self.skipped),
        }


def _empty_ranked(report_id: str) -> RankedList:
    return RankedList(results=(), query_id=report_id)


def run_benchmark(
    index: CorpusIndex,
    reports: Sequence[BugReport],
    goldset: GoldSet,
    mode: str = "both",
    ks: Sequence[int] = (1, 5, 10),
    settings: Settings | None = None,
    jobs: int = 1,
) -> BenchmarkResult:
    """Run the full pipeline and/or the baseline per report and aggregate
    metrics per class and overall. Reports missing from the goldset are
    listed as skipped, never fatal."""
    if mode not in MODES:
        raise ParameterError(f"mode must be one of {MODES}, got {mode!r}")
    if not reports:
        raise ParameterError("no reports to evaluate")
    if any(k < 1 for k in ks):
        raise ParameterError("all K values must be >= 1")
    s = settings or Settings()

    ordered = sorted(reports, key=lambda r: r.id)
    skipped = tuple(r.id for r in ordered if r.id not in goldset)
    scored = [r for r in ordered if r.id in goldset]
    if not scored:
        raise GoldsetError("goldset covers none of the reports")

    def evaluate_one(
        report: BugReport,
    ) -> tuple[str, ReportClass, RankedList | None, RankedList | None]:
        classified = classify(report)
        full = index.doc_count
        base = reform = None
        if mode in ("baseline", "both"):
            try:
                base = search(
                    index, baseline_tokens(report, s), top_n=full,
                    query_id=report.id, stoplist=s.stoplist, keywords=s.keywords,
                )
            except QueryError:
                base = _empty_ranked(report.id)
        if mode in ("blizzard", "both"):
            try:
                query, _ = reformulate_report(classified, s, index)
                reform = search(
                    index, query, top_n=full,
                    query_id=report.id, stoplist=s.stoplist, keywords=s.keywords,
                )
            except QueryError:
                reform = _empty_ranked(report.id)
        return report.id, classified.label, base, reform

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(evaluate_one, scored))
    else:
        outcomes = [evaluate_one(r) for r in scored]
    outcomes.sort(key=lambda o: o[0])
    labels = {rid: label for rid, label, _, _ in outcomes}

    def aggregate(results_by_id: dict[str, RankedList]) -> dict[str, MetricsReport]:
        runs = [
            (rid, results_by_id[rid], goldset.entries[rid]) for rid in sorted(results_by_id)
        ]
        sections = {"overall": compute_metrics(runs, ks)}
        for label in ReportClass:
            class_runs = [run for run in runs if labels[run[0]] is label]
            if class_runs:
                sections[label.value] = compute_metrics(class_runs, ks)
        return sections

    baseline_section = None
    if mode in ("baseline", "both"):
        baseline_section = aggregate({rid: base for rid, _, base, _ in outcomes})
    reform_section = None
    if mode in ("blizzard", "both"):
        reform_section = aggregate({rid: reform for rid, _, _, reform in outcomes})

    comparison = None
    if mode == "both":
        assert baseline_section is not None and reform_section is not None
        comparison = {}
        for key in baseline_section:
            if key in reform_section:
                comparison[key] = compare_effectiveness(
                    reform_section[key].per_query_effectiveness,
                    baseline_section[key].per_query_effectiveness,
                )

    return BenchmarkResult(
        ks=tuple(ks),
        baseline=baseline_section,
        reformulated=reform_section,
        comparison=comparison,
        skipped=skipped,
    )
