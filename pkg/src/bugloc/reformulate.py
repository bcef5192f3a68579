"""Assembly of the final search query from ranked terms and report content.

Each report class gets its own recipe:

* BR_ST -- exception names + preprocessed error-message lines + preprocessed
  title + the top trace-graph terms; raw frame lines never survive,
* BR_PE -- the top text-graph terms, nothing else,
* BR_NL -- the full preprocessed report text plus the top source-term-graph
  (feedback) terms.

Tokens are emitted in provenance order so output is deterministic; BM25 does
not care about order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ContractError
from .pagerank import RankedTerms, top_k
from .preprocess import flatten, preprocess
from .reports import ClassifiedReport, ReportClass


class Provenance(Enum):
    EXCEPTION_NAME = "exception_name"
    ERROR_MESSAGE = "error_message"
    TITLE = "title"
    TRACE_TERM = "trace_term"
    BODY_TERM = "body_term"
    FEEDBACK_TERM = "feedback_term"


@dataclass(frozen=True)
class ReformulatedQuery:
    tokens: tuple[str, ...]
    label: ReportClass
    provenance: tuple[Provenance, ...]

    def tagged(self) -> list[tuple[str, str]]:
        return [(t, p.value) for t, p in zip(self.tokens, self.provenance)]


DEFAULT_LENGTHS = {
    ReportClass.BR_ST: 11,
    ReportClass.BR_PE: 30,
    ReportClass.BR_NL: 8,
}

# Which graph flavor feeds each report class.
GRAPH_FLAVORS = {
    ReportClass.BR_ST: "trace",
    ReportClass.BR_PE: "text",
    ReportClass.BR_NL: "source",
}


def reformulation_length(
    label: ReportClass, overrides: dict[ReportClass, int] | None = None
) -> int:
    """Number of ranked terms the query takes for this class (11/30/8)."""
    if overrides and label in overrides:
        return overrides[label]
    return DEFAULT_LENGTHS[label]


def reformulate(
    classified: ClassifiedReport,
    ranked: RankedTerms,
    *,
    length: int | None = None,
    dedup: bool = False,
    flavor: str | None = None,
    split: bool = True,
    stoplist: frozenset[str] | None = None,
    keywords: frozenset[str] | None = None,
) -> ReformulatedQuery:
    """Build the class-specific reformulated query.

    ``ranked`` must come from the graph flavor matching the report class;
    pass ``flavor`` to have that checked. Duplicates are kept unless
    ``dedup`` is set.
    """
    label = classified.label
    if flavor is not None and flavor != GRAPH_FLAVORS[label]:
        raise ContractError(
            f"ranked terms come from a {flavor!r} graph but class {label.value} "
            f"needs {GRAPH_FLAVORS[label]!r}"
        )
    if length is None:
        length = reformulation_length(label)

    def pre(text: str) -> list[str]:
        return flatten(preprocess(text, split=split, stoplist=stoplist, keywords=keywords))

    parts: list[tuple[str, Provenance]] = []
    if label is ReportClass.BR_ST:
        for name in classified.exception_names:
            parts.append((name, Provenance.EXCEPTION_NAME))
        for line in classified.error_message_lines:
            for token in pre(line):
                parts.append((token, Provenance.ERROR_MESSAGE))
        for token in pre(classified.report.title):
            parts.append((token, Provenance.TITLE))
        for term in top_k(ranked, length) if ranked.entries else []:
            parts.append((term, Provenance.TRACE_TERM))
    elif label is ReportClass.BR_PE:
        for term in top_k(ranked, length) if ranked.entries else []:
            parts.append((term, Provenance.BODY_TERM))
    else:
        for token in pre(classified.report.title):
            parts.append((token, Provenance.TITLE))
        for token in pre(classified.report.description):
            parts.append((token, Provenance.BODY_TERM))
        for term in top_k(ranked, length) if ranked.entries else []:
            parts.append((term, Provenance.FEEDBACK_TERM))

    if dedup:
        seen: set[str] = set()
        unique: list[tuple[str, Provenance]] = []
        for token, prov in parts:
            if token not in seen:
                seen.add(token)
                unique.append((token, prov))
        parts = unique

    return ReformulatedQuery(
        tokens=tuple(t for t, _ in parts),
        label=label,
        provenance=tuple(p for _, p in parts),
    )
