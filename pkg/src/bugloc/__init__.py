"""Bug localization from bug reports: report-quality classification,
graph-based query reformulation, and BM25 code search."""

__version__ = "0.1.0"

from .evaluate import (
    BenchmarkResult,
    ComparisonReport,
    GoldSet,
    MetricsReport,
    average_precision_at_k,
    compare_effectiveness,
    hit_at_k,
    load_goldset,
    mean_metrics,
    query_effectiveness,
    run_benchmark,
)
from .graphs import (
    SignaturePhrase,
    TermGraph,
    build_cooccurrence_graph,
    build_pos_graph,
    build_source_term_graph,
    build_text_graph,
    build_trace_graph,
    extract_signature_phrases,
)
from .index import (
    CorpusDocument,
    CorpusIndex,
    RankedList,
    ingest,
    load_index,
    pseudo_relevance_feedback,
    save_index,
    search,
)
from .pagerank import RankedTerms, pagerank, top_k
from .pipeline import LocalizeResult, Settings, baseline_tokens, localize, reformulate_report
from .postag import LexiconTagger, PosRank, PosTagger, pos_tag
from .preprocess import Sentence, Token, preprocess, split_identifier
from .reformulate import (
    ReformulatedQuery,
    Provenance,
    reformulate,
    reformulation_length,
)
from .reports import (
    BugReport,
    ClassifiedReport,
    ReportClass,
    StackFrame,
    classify,
    detect_program_entities,
    load_reports,
    match_trace_lines,
    parse_report,
)

__all__ = [name for name in dir() if not name.startswith("_")]
