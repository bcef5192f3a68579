"""Term-graph builders: the shared directed-graph substrate plus the three
flavors used for query reformulation.

* trace graph -- class/method names from stack frames; bidirectional inside a
  frame, directed from each frame toward its higher-interest predecessor,
* text graph -- union of sliding-window co-occurrence and POS-rank edges over
  report sentences,
* source term graph -- co-occurrence over signature phrases harvested from
  pseudo-relevance-feedback documents.

A bidirectional relation is stored as both ordered pairs; self-loops are
never created.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import GraphError, ParameterError
from .postag import PosRank
from .preprocess import Sentence, Token, split_identifier
from .reports import StackFrame

if TYPE_CHECKING:  # pragma: no cover
    from .index import CorpusDocument


@dataclass(frozen=True)
class SignaturePhrase:
    words: tuple[str, ...]


@dataclass(frozen=True)
class TermGraph:
    nodes: frozenset[str]
    edges: frozenset[tuple[str, str]]

    def out_neighbors(self, node: str) -> list[str]:
        return sorted(b for a, b in self.edges if a == node)

    def in_neighbors(self, node: str) -> list[str]:
        return sorted(a for a, b in self.edges if b == node)

    def union(self, other: "TermGraph") -> "TermGraph":
        return TermGraph(self.nodes | other.nodes, self.edges | other.edges)


class _Builder:
    def __init__(self) -> None:
        self.nodes: set[str] = set()
        self.edges: set[tuple[str, str]] = set()

    def add_node(self, node: str) -> None:
        self.nodes.add(node)

    def add_edge(self, a: str, b: str) -> None:
        if a == b:
            return
        self.nodes.add(a)
        self.nodes.add(b)
        self.edges.add((a, b))

    def add_relation(self, a: str, b: str) -> None:
        self.add_edge(a, b)
        self.add_edge(b, a)

    def build(self) -> TermGraph:
        return TermGraph(frozenset(self.nodes), frozenset(self.edges))


def build_trace_graph(frames: Sequence[StackFrame]) -> TermGraph:
    """Graph over class and method names of stack frames.

    Each frame contributes its class and method as nodes with a bidirectional
    edge between them; each frame after the first also points its class and
    method at the previous (higher-interest) frame's class and method.
    Duplicate names merge into single nodes, identity is the raw unsplit
    identifier.
    """
    if not frames:
        raise GraphError("trace graph requires at least one stack frame")
    for i, frame in enumerate(frames):
        if frame.position != i + 1:
            raise GraphError(
                f"frame positions must be consecutive from 1, got {frame.position} at index {i}"
            )
    g = _Builder()
    for i, frame in enumerate(frames):
        g.add_node(frame.class_name)
        g.add_node(frame.method_name)
        g.add_relation(frame.class_name, frame.method_name)
        if i > 0:
            g.add_edge(frame.class_name, frames[i - 1].class_name)
            g.add_edge(frame.method_name, frames[i - 1].method_name)
    return g.build()


def build_cooccurrence_graph(sentences: Iterable[Sentence], window: int = 2) -> TermGraph:
    """Bidirectional edges between distinct terms co-occurring within a
    sliding window inside one sentence; windows never cross sentences."""
    if window < 2:
        raise ParameterError(f"co-occurrence window must be >= 2, got {window}")
    g = _Builder()
    for sentence in sentences:
        terms = sentence.lowers()
        for term in terms:
            g.add_node(term)
        for i in range(len(terms)):
            for j in range(i + 1, min(i + window, len(terms))):
                g.add_relation(terms[i], terms[j])
    return g.build()


def build_pos_graph(tagged: Iterable[Sequence[tuple[Token, PosRank]]]) -> TermGraph:
    """POS-dependency edges per sentence: primary terms pair bidirectionally,
    and every strictly-lower-rank term receives an edge from every
    higher-rank term. OTHER-rank tokens are ignored."""
    order = {PosRank.PRIMARY: 0, PosRank.SECONDARY: 1, PosRank.TERTIARY: 2}
    g = _Builder()
    for sentence in tagged:
        by_rank: dict[PosRank, list[str]] = {r: [] for r in order}
        for token, rank in sentence:
            if rank is PosRank.OTHER:
                continue
            g.add_node(token.lower)
            if token.lower not in by_rank[rank]:
                by_rank[rank].append(token.lower)
        primaries = by_rank[PosRank.PRIMARY]
        for i in range(len(primaries)):
            for j in range(i + 1, len(primaries)):
                g.add_relation(primaries[i], primaries[j])
        for high, low in (
            (PosRank.PRIMARY, PosRank.SECONDARY),
            (PosRank.PRIMARY, PosRank.TERTIARY),
            (PosRank.SECONDARY, PosRank.TERTIARY),
        ):
            for h in by_rank[high]:
                for l in by_rank[low]:
                    g.add_edge(h, l)
    return g.build()


def build_text_graph(
    sentences: Sequence[Sentence],
    tagged: Sequence[Sequence[tuple[Token, PosRank]]],
    window: int = 2,
) -> TermGraph:
    """Union of the co-occurrence and POS graphs over the same sentences."""
    return build_cooccurrence_graph(sentences, window).union(build_pos_graph(tagged))


# Heuristic Java signature extraction. Declarations are recognized by shape:
# optional modifiers, a type-ish prefix, a name, a parameter list, then an
# opening brace or semicolon. Not AST-grade on purpose.
_METHOD_DECL = re.compile(
    r"^[ \t]*((?:(?:public|protected|private|static|final|abstract|synchronized|"
    r"native|strictfp|default)\s+)*[\w$<>\[\],.\s]*?)\b([A-Za-z_$][\w$]*)\s*"
    r"\([^()]*\)\s*(?:throws\s+[\w$.,\s]+?)?\s*\{",
    re.MULTILINE,
)
_FIELD_DECL = re.compile(
    r"^[ \t]*(?:(?:public|protected|private|static|final|transient|volatile)\s+)+"
    r"[\w$<>\[\],.]+(?:\s*<[^;=]*>)?\s+([A-Za-z_$][\w$]*)\s*(?:=[^;]*)?;",
    re.MULTILINE,
)
_NOT_SIGNATURES = frozenset(
    {"if", "while", "for", "switch", "catch", "synchronized", "return", "new", "do", "try", "else"}
)


def extract_signature_phrases(source_text: str) -> list[SignaturePhrase]:
    """One phrase per method or field declaration found in Java source text:
    the declared identifier split into ordered lower-case words. Parameter
    and return types are not part of the phrase."""
    phrases: list[tuple[int, SignaturePhrase]] = []
    for m in _METHOD_DECL.finditer(source_text):
        prefix, name = m.group(1), m.group(2)
        if name in _NOT_SIGNATURES or re.search(r"\b(?:new|return|throw)\b", prefix):
            continue
        words = split_identifier(name)
        if words:
            phrases.append((m.start(), SignaturePhrase(tuple(words))))
    for m in _FIELD_DECL.finditer(source_text):
        words = split_identifier(m.group(1))
        if words:
            phrases.append((m.start(), SignaturePhrase(tuple(words))))
    phrases.sort(key=lambda item: item[0])
    return [phrase for _, phrase in phrases]


def build_source_term_graph(
    feedback_docs: Iterable["CorpusDocument"], window: int = 2
) -> TermGraph:
    """Co-occurrence graph over the signature phrases of feedback documents;
    the window never crosses a phrase boundary."""
    if window < 2:
        raise ParameterError(f"co-occurrence window must be >= 2, got {window}")
    g = _Builder()
    for doc in feedback_docs:
        for phrase in doc.signatures:
            for word in phrase.words:
                g.add_node(word)
            for i in range(len(phrase.words)):
                for j in range(i + 1, min(i + window, len(phrase.words))):
                    g.add_relation(phrase.words[i], phrase.words[j])
    return g.build()


def to_dot(graph: TermGraph, name: str = "terms") -> str:
    """Render a graph as DOT text for debugging."""
    lines = [f"digraph {name} {{"]
    for node in sorted(graph.nodes):
        lines.append(f'  "{node}";')
    for a, b in sorted(graph.edges):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
