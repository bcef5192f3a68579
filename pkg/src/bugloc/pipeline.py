"""End-to-end wiring: report -> class -> graph -> ranked terms -> query ->
ranked files, plus the baseline query used for comparison.

The baseline query is the preprocessed whole report text (title plus
description) with complex tokens split and no stemming.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParameterError
from .graphs import (
    TermGraph,
    build_source_term_graph,
    build_text_graph,
    build_trace_graph,
)
from .index import CorpusIndex, RankedList, pseudo_relevance_feedback, search
from .pagerank import RankedTerms, pagerank
from .postag import PosTagger, pos_tag
from .preprocess import flatten, preprocess
from .reformulate import GRAPH_FLAVORS, ReformulatedQuery, reformulate
from .reports import BugReport, ClassifiedReport, ReportClass, classify


@dataclass
class Settings:
    """Tunable knobs with their default values from the method definition."""

    phi: float = 0.85
    init_weight: float = 0.25
    epsilon: float = 0.0001
    max_iter: int = 100
    window: int = 2
    prf_k: int = 10
    length_st: int = 11
    length_pe: int = 30
    length_nl: int = 8
    k1: float = 1.2
    b: float = 0.75
    dedup: bool = False
    extensions: tuple[str, ...] = (".java",)
    stoplist: frozenset[str] | None = None
    keywords: frozenset[str] | None = None
    tagger: PosTagger | None = field(default=None, repr=False)

    def length_for(self, label: ReportClass) -> int:
        return {
            ReportClass.BR_ST: self.length_st,
            ReportClass.BR_PE: self.length_pe,
            ReportClass.BR_NL: self.length_nl,
        }[label]


@dataclass(frozen=True)
class LocalizeResult:
    classified: ClassifiedReport
    query: ReformulatedQuery
    graph: TermGraph
    ranked: RankedList


def baseline_tokens(report: BugReport, settings: Settings | None = None) -> list[str]:
    """Preprocessed title + description, split, unstemmed."""
    s = settings or Settings()
    text = report.title + "\n" + report.description
    return flatten(preprocess(text, split=True, stoplist=s.stoplist, keywords=s.keywords))


def term_graph_for(
    classified: ClassifiedReport,
    settings: Settings | None = None,
    index: CorpusIndex | None = None,
) -> TermGraph:
    """Build the graph flavor matching the report class. BR_NL needs the
    corpus index for pseudo-relevance feedback."""
    s = settings or Settings()
    if classified.label is ReportClass.BR_ST:
        if not classified.frames:
            return TermGraph(frozenset(), frozenset())
        return build_trace_graph(classified.frames)
    if classified.label is ReportClass.BR_PE:
        text = classified.report.title + "\n" + classified.report.description
        sentences = preprocess(text, split=True, stoplist=s.stoplist, keywords=s.keywords)
        tagged = [pos_tag(sentence, s.tagger) for sentence in sentences]
        return build_text_graph(sentences, tagged, window=s.window)
    if index is None:
        raise ParameterError("BR_NL reformulation needs a corpus index for feedback")
    feedback = pseudo_relevance_feedback(
        index,
        baseline_tokens(classified.report, s),
        k=s.prf_k,
        stoplist=s.stoplist,
        keywords=s.keywords,
    )
    return build_source_term_graph(feedback, window=s.window)


def rank_graph_terms(graph: TermGraph, settings: Settings | None = None) -> RankedTerms:
    s = settings or Settings()
    if not graph.nodes:
        return RankedTerms(entries=(), iterations_used=0, converged=True)
    return pagerank(
        graph, phi=s.phi, init=s.init_weight, epsilon=s.epsilon, max_iter=s.max_iter
    )


def reformulate_report(
    classified: ClassifiedReport,
    settings: Settings | None = None,
    index: CorpusIndex | None = None,
) -> tuple[ReformulatedQuery, TermGraph]:
    s = settings or Settings()
    graph = term_graph_for(classified, s, index)
    ranked = rank_graph_terms(graph, s)
    query = reformulate(
        classified,
        ranked,
        length=s.length_for(classified.label),
        dedup=s.dedup,
        flavor=GRAPH_FLAVORS[classified.label],
        stoplist=s.stoplist,
        keywords=s.keywords,
    )
    return query, graph


def localize(
    report: BugReport,
    index: CorpusIndex,
    settings: Settings | None = None,
    top_n: int = 10,
    force: ReportClass | None = None,
) -> LocalizeResult:
    """Full pipeline for one report against an indexed corpus."""
    s = settings or Settings()
    classified = classify(report, force=force)
    query, graph = reformulate_report(classified, s, index)
    ranked = search(
        index, query, top_n=top_n, query_id=report.id, stoplist=s.stoplist, keywords=s.keywords
    )
    return LocalizeResult(classified=classified, query=query, graph=graph, ranked=ranked)
