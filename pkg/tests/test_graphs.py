import pytest

from bugloc.errors import GraphError, ParameterError
from bugloc.graphs import (
    SignaturePhrase,
    build_cooccurrence_graph,
    build_pos_graph,
    build_source_term_graph,
    build_text_graph,
    build_trace_graph,
    extract_signature_phrases,
    to_dot,
)
from bugloc.postag import pos_tag
from bugloc.preprocess import preprocess
from bugloc.reports import match_trace_lines


def frames_from(lines):
    return match_trace_lines("\n".join(lines))


def relations(graph):
    """Bidirectional pairs in the graph (each stored as two ordered edges)."""
    return {(a, b) for a, b in graph.edges if (b, a) in graph.edges and a < b}


class TestTraceGraph:
    def test_table1_first_three_frames(self):
        graph = build_trace_graph(
            frames_from(
                [
                    "at org.eclipse.jdt.internal.debug.core.model.JDIValue.toString(JDIValue.java:362)",
                    "at org.eclipse.jdt.internal.debug.eval.ast.instructions.Cast.execute(Cast.java:88)",
                    "at org.eclipse.jdt.internal.debug.eval.ast.engine.Interpreter.execute(Interpreter.java:50)",
                ]
            )
        )
        assert graph.nodes == {"JDIValue", "toString", "Cast", "execute", "Interpreter"}
        assert graph.edges == {
            ("JDIValue", "toString"), ("toString", "JDIValue"),
            ("Cast", "execute"), ("execute", "Cast"),
            ("Cast", "JDIValue"), ("execute", "toString"),
            ("Interpreter", "execute"), ("execute", "Interpreter"),
            ("Interpreter", "Cast"),
        }

    def test_single_frame(self):
        graph = build_trace_graph(frames_from(["at p.C.m(C.java:1)"]))
        assert graph.nodes == {"C", "m"}
        assert graph.edges == {("C", "m"), ("m", "C")}

    def test_two_frames_edge_rule(self):
        graph = build_trace_graph(frames_from(["at p.A.f(A.java:1)", "at p.B.g(B.java:2)"]))
        assert graph.edges == {
            ("A", "f"), ("f", "A"),
            ("B", "g"), ("g", "B"),
            ("B", "A"), ("g", "f"),
        }

    def test_duplicate_names_merge(self):
        graph = build_trace_graph(
            frames_from(["at p.A.run(A.java:1)", "at p.A.run(A.java:2)", "at p.B.run(B.java:3)"])
        )
        # repeated (A, run) adds nothing; self edges are dropped
        assert graph.nodes == {"A", "run", "B"}
        assert ("B", "A") in graph.edges
        assert ("run", "run") not in graph.edges

    def test_edge_count_bound(self, table1_report):
        frames = match_trace_lines(table1_report.description)
        graph = build_trace_graph(frames)
        assert len(graph.edges) <= 2 * len(frames) + 2 * (len(frames) - 1)

    def test_empty_frames_rejected(self):
        with pytest.raises(GraphError):
            build_trace_graph([])


class TestCooccurrenceGraph:
    def test_worked_example(self):
        graph = build_cooccurrence_graph(preprocess("source code directory"))
        assert graph.nodes == {"source", "code", "directory"}
        assert relations(graph) == {("code", "source"), ("code", "directory")}

    def test_single_token_sentence(self):
        graph = build_cooccurrence_graph(preprocess("directory"))
        assert graph.nodes == {"directory"}
        assert graph.edges == frozenset()

    def test_shared_node_across_sentences(self):
        graph = build_cooccurrence_graph(preprocess("alpha beta. beta gamma"))
        assert graph.nodes == {"alpha", "beta", "gamma"}
        assert relations(graph) == {("alpha", "beta"), ("beta", "gamma")}

    def test_window_of_two_yields_adjacent_relations(self):
        sentences = preprocess("alpha beta gamma delta epsilon")
        graph = build_cooccurrence_graph(sentences, window=2)
        assert len(relations(graph)) == 4

    def test_wider_window(self):
        graph = build_cooccurrence_graph(preprocess("alpha beta gamma"), window=3)
        assert ("alpha", "gamma") in graph.edges

    def test_bad_window(self):
        with pytest.raises(ParameterError):
            build_cooccurrence_graph(preprocess("alpha beta"), window=1)


class TestPosGraph:
    def test_worked_example_six_relations(self):
        sentences = preprocess("Open the source code directory")
        tagged = [pos_tag(s) for s in sentences]
        graph = build_pos_graph(tagged)
        assert graph.nodes == {"open", "source", "code", "directory"}
        assert graph.edges == {
            ("source", "code"), ("code", "source"),
            ("code", "directory"), ("directory", "code"),
            ("source", "directory"), ("directory", "source"),
            ("source", "open"), ("code", "open"), ("directory", "open"),
        }

    def test_all_noun_sentence(self):
        tagged = [pos_tag(s) for s in preprocess("source code")]
        graph = build_pos_graph(tagged)
        assert graph.edges == {("source", "code"), ("code", "source")}

    def test_single_verb_sentence(self):
        tagged = [pos_tag(s) for s in preprocess("open", keep_stopwords=True)]
        graph = build_pos_graph(tagged)
        assert graph.nodes == {"open"}
        assert graph.edges == frozenset()


class TestTextGraph:
    def test_union_adds_pos_relations(self):
        sentences = preprocess("source code directory")
        tagged = [pos_tag(s) for s in sentences]
        graph = build_text_graph(sentences, tagged)
        # co-occurrence alone has no source<->directory relation; POS adds it
        assert ("source", "directory") in graph.edges
        assert ("directory", "source") in graph.edges

    def test_union_nodes_cover_both_components(self):
        sentences = preprocess("Open the source code directory")
        tagged = [pos_tag(s) for s in sentences]
        union = build_text_graph(sentences, tagged)
        co = build_cooccurrence_graph(sentences)
        pos = build_pos_graph(tagged)
        assert union.nodes == co.nodes | pos.nodes
        assert union.edges == co.edges | pos.edges

    def test_table2_vocabulary_lands_in_graph(self, table2_report):
        text = table2_report.title + "\n" + table2_report.description
        sentences = preprocess(text)
        tagged = [pos_tag(s) for s in sentences]
        graph = build_text_graph(sentences, tagged)
        assert {"pref", "page", "preference"} <= graph.nodes

    def test_one_word_title_single_node(self):
        sentences = preprocess("toolbar")
        graph = build_text_graph(sentences, [pos_tag(s) for s in sentences])
        assert graph.nodes == {"toolbar"}


class TestSignaturePhrases:
    def test_method_signature(self):
        source = "public class A {\n  public ClassLoader getContextClassLoader() {\n  }\n}"
        phrases = extract_signature_phrases(source)
        assert SignaturePhrase(("get", "context", "class", "loader")) in phrases

    def test_field_signature(self):
        source = "public class A {\n  public static final int MAX_VALUE = 42;\n}"
        assert extract_signature_phrases(source) == [SignaturePhrase(("max", "value"))]

    def test_no_signatures(self):
        assert extract_signature_phrases("// nothing but a comment\n") == []

    def test_control_flow_is_not_a_signature(self):
        source = (
            "class A {\n"
            "  void process() {\n"
            "    if (x) {\n"
            "      g();\n"
            "    }\n"
            "    while (y) {\n"
            "      h();\n"
            "    }\n"
            "  }\n"
            "}\n"
        )
        names = {p.words for p in extract_signature_phrases(source)}
        assert ("process",) in names
        assert ("if",) not in names and ("while",) not in names


class TestSourceTermGraph:
    class Doc:
        def __init__(self, *phrases):
            self.signatures = [SignaturePhrase(tuple(p)) for p in phrases]

    def test_worked_example(self):
        graph = build_source_term_graph([self.Doc(["get", "context", "class", "loader"])])
        assert graph.nodes == {"get", "context", "class", "loader"}
        assert relations(graph) == {
            ("context", "get"), ("class", "context"), ("class", "loader"),
        }

    def test_zero_feedback_docs(self):
        graph = build_source_term_graph([])
        assert graph.nodes == frozenset() and graph.edges == frozenset()

    def test_shared_word_merges(self):
        graph = build_source_term_graph(
            [self.Doc(["get", "context"]), self.Doc(["context", "menu"])]
        )
        assert graph.nodes == {"get", "context", "menu"}
        assert relations(graph) == {("context", "get"), ("context", "menu")}

    def test_window_does_not_cross_phrases(self):
        graph = build_source_term_graph([self.Doc(["alpha", "beta"], ["gamma", "delta"])])
        assert ("beta", "gamma") not in graph.edges


def test_builders_are_deterministic(table1_report):
    frames = match_trace_lines(table1_report.description)
    assert build_trace_graph(frames) == build_trace_graph(frames)
    sentences = preprocess(table1_report.description)
    assert build_cooccurrence_graph(sentences) == build_cooccurrence_graph(sentences)


def test_every_edge_endpoint_is_a_node(table1_report, corpus_index):
    frames = match_trace_lines(table1_report.description)
    graphs = [build_trace_graph(frames), build_source_term_graph(corpus_index.documents)]
    sentences = preprocess(table1_report.description)
    graphs.append(build_text_graph(sentences, [pos_tag(s) for s in sentences]))
    for graph in graphs:
        for a, b in graph.edges:
            assert a in graph.nodes and b in graph.nodes
            assert a != b


def test_dot_export_lists_nodes_and_edges():
    graph = build_cooccurrence_graph(preprocess("alpha beta"))
    dot = to_dot(graph)
    assert dot.startswith("digraph")
    assert '"alpha" -> "beta";' in dot and '"beta" -> "alpha";' in dot


from hypothesis import given, strategies as st

_WORDS = st.lists(
    st.from_regex(r"[a-z]{3,8}", fullmatch=True), min_size=1, max_size=12, unique=True
)


@given(_WORDS)
def test_window_two_relation_count_property(words):
    from bugloc.preprocess import Sentence, Token, TokenOrigin

    sentence = Sentence(tuple(Token(w, w, TokenOrigin.ORIGINAL) for w in words))
    graph = build_cooccurrence_graph([sentence], window=2)
    assert len(relations(graph)) == len(words) - 1
    assert graph.nodes == set(words)
