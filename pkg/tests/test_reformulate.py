from collections import Counter

import pytest

from bugloc.errors import ContractError
from bugloc.pagerank import RankedTerms, pagerank, top_k
from bugloc.pipeline import Settings, baseline_tokens, reformulate_report, term_graph_for
from bugloc.reformulate import (
    DEFAULT_LENGTHS,
    Provenance,
    reformulate,
    reformulation_length,
)
from bugloc.reports import ReportClass, classify


class TestReformulationLength:
    def test_paper_defaults(self):
        assert reformulation_length(ReportClass.BR_ST) == 11
        assert reformulation_length(ReportClass.BR_PE) == 30
        assert reformulation_length(ReportClass.BR_NL) == 8

    def test_override(self):
        assert reformulation_length(ReportClass.BR_ST, {ReportClass.BR_ST: 5}) == 5
        assert reformulation_length(ReportClass.BR_PE, {ReportClass.BR_ST: 5}) == 30


class TestBrStQuery:
    @pytest.fixture()
    def query_and_ranked(self, table1_report):
        classified = classify(table1_report)
        graph = term_graph_for(classified)
        ranked = pagerank(graph)
        return reformulate(classified, ranked, flavor="trace"), ranked

    def test_contains_exception_title_and_top_terms(self, query_and_ranked):
        query, _ = query_and_ranked
        tokens = set(query.tokens)
        assert "NullPointerException" in tokens
        assert {"cast", "null"} <= tokens
        assert {"JDIValue", "toString", "execute", "EvaluationThread", "run"} <= tokens

    def test_trace_terms_bounded_by_length(self, query_and_ranked):
        query, _ = query_and_ranked
        trace_terms = [
            t for t, p in zip(query.tokens, query.provenance) if p is Provenance.TRACE_TERM
        ]
        assert 0 < len(trace_terms) <= 11

    def test_no_raw_frame_lines(self, query_and_ranked, table1_report):
        query, _ = query_and_ranked
        for token in query.tokens:
            assert "(" not in token and "at org.eclipse" not in token

    def test_provenance_ordering(self, query_and_ranked):
        query, _ = query_and_ranked
        order = {
            Provenance.EXCEPTION_NAME: 0,
            Provenance.ERROR_MESSAGE: 1,
            Provenance.TITLE: 2,
            Provenance.TRACE_TERM: 3,
        }
        ranks = [order[p] for p in query.provenance]
        assert ranks == sorted(ranks)

    def test_deterministic(self, table1_report):
        classified = classify(table1_report)
        ranked = pagerank(term_graph_for(classified))
        assert reformulate(classified, ranked) == reformulate(classified, ranked)


class TestBrPeQuery:
    def test_exactly_top30_ranked_terms(self, pe_report):
        classified = classify(pe_report)
        assert classified.label is ReportClass.BR_PE
        graph = term_graph_for(classified)
        ranked = pagerank(graph)
        query = reformulate(classified, ranked, flavor="text")
        assert list(query.tokens) == top_k(ranked, 30)
        assert set(query.provenance) == {Provenance.BODY_TERM}
        assert {"astvisitor", "previsit", "postvisit", "visitor", "pre", "post"} <= set(
            query.tokens
        )

    def test_length_cap(self, pe_report):
        classified = classify(pe_report)
        ranked = pagerank(term_graph_for(classified))
        query = reformulate(classified, ranked)
        assert len(query.tokens) <= 30


class TestBrNlQuery:
    def test_additive_over_baseline(self, table2_report, corpus_index):
        classified = classify(table2_report)
        assert classified.label is ReportClass.BR_NL
        query, _ = reformulate_report(classified, Settings(), corpus_index)
        base = Counter(baseline_tokens(table2_report))
        reformulated = Counter(query.tokens)
        assert base <= reformulated
        assert sum(reformulated.values()) > sum(base.values())

    def test_feedback_terms_bounded(self, table2_report, corpus_index):
        classified = classify(table2_report)
        query, _ = reformulate_report(classified, Settings(), corpus_index)
        feedback = [
            t for t, p in zip(query.tokens, query.provenance) if p is Provenance.FEEDBACK_TERM
        ]
        assert 0 < len(feedback) <= 8

    def test_feedback_terms_echo_signature_vocabulary(self, table2_report, corpus_index):
        classified = classify(table2_report)
        query, _ = reformulate_report(classified, Settings(), corpus_index)
        feedback = {
            t for t, p in zip(query.tokens, query.provenance) if p is Provenance.FEEDBACK_TERM
        }
        family = {
            "compliance", "create", "preference", "add",
            "configuration", "field", "dialog", "annotation",
        }
        assert len(feedback & family) >= 4


def test_flavor_mismatch_is_a_contract_error(table1_report):
    classified = classify(table1_report)
    ranked = pagerank(term_graph_for(classified))
    with pytest.raises(ContractError):
        reformulate(classified, ranked, flavor="text")


def test_dedup_flag_drops_repeats(table1_report):
    classified = classify(table1_report)
    ranked = pagerank(term_graph_for(classified))
    query = reformulate(classified, ranked, dedup=True)
    assert len(query.tokens) == len(set(query.tokens))


def test_empty_ranked_terms_tolerated(table2_report):
    classified = classify(table2_report)
    query = reformulate(
        classified, RankedTerms((), 0, True), flavor="source"
    )
    assert query.tokens  # title and body tokens still present
    assert Provenance.FEEDBACK_TERM not in set(query.provenance)


def test_default_lengths_table():
    assert DEFAULT_LENGTHS == {
        ReportClass.BR_ST: 11,
        ReportClass.BR_PE: 30,
        ReportClass.BR_NL: 8,
    }
