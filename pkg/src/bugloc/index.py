"""Corpus ingest, BM25 inverted index, on-disk persistence, ranked search,
and pseudo-relevance feedback.

Documents are whole source files run through the shared text pipeline
(identifiers indexed as whole plus parts, stop words and Java keywords
removed, no stemming, comments kept). Scoring is Okapi BM25 with the
smoothed idf ``ln(1 + (N - df + 0.5) / (df + 0.5))``.

The index file is a single binary: magic ``BLZIDX``, a little-endian u32
format version, then length-prefixed JSON records (header, documents,
postings).
"""

from __future__ import annotations

import json
import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Sequence

from .errors import CorpusError, IndexFormatError, ParameterError, QueryError
from .graphs import SignaturePhrase, extract_signature_phrases
from .preprocess import flatten, preprocess
from .reformulate import ReformulatedQuery

MAGIC = b"BLZIDX"
FORMAT_VERSION = 1

DEFAULT_K1 = 1.2
DEFAULT_B = 0.75


@dataclass(frozen=True)
class CorpusDocument:
    doc_id: int
    path: str  # corpus-relative, forward slashes
    tokens: tuple[str, ...]
    signatures: tuple[SignaturePhrase, ...]

    @property
    def length(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class RankedList:
    results: tuple[tuple[str, float], ...]  # (path, score), score descending
    query_id: str = ""

    def paths(self) -> list[str]:
        return [p for p, _ in self.results]


@dataclass
class CorpusIndex:
    documents: list[CorpusDocument]
    postings: dict[str, list[tuple[int, int]]]  # term -> [(doc_id, tf)], doc_id ascending
    k1: float = DEFAULT_K1
    b: float = DEFAULT_B
    avg_doc_length: float = field(init=False)

    def __post_init__(self) -> None:
        for position, doc in enumerate(self.documents):
            if doc.doc_id != position:
                raise IndexFormatError(
                    f"document ids must be dense and ordered: {doc.path} has id "
                    f"{doc.doc_id} at position {position}"
                )
        n = len(self.documents)
        self.avg_doc_length = sum(d.length for d in self.documents) / n if n else 0.0

    @property
    def doc_count(self) -> int:
        return len(self.documents)

    def document_by_path(self, path: str) -> CorpusDocument:
        for doc in self.documents:
            if doc.path == path:
                return doc
        raise KeyError(path)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CorpusIndex):
            return NotImplemented
        return (
            self.documents == other.documents
            and self.postings == other.postings
            and self.k1 == other.k1
            and self.b == other.b
        )


def tokenize_source(
    text: str,
    stoplist: frozenset[str] | None = None,
    keywords: frozenset[str] | None = None,
) -> list[str]:
    """Index-term stream for one document: whole identifiers plus split
    parts, case-folded, stop words and keywords dropped, no stemming."""
    return flatten(preprocess(text, split=True, stoplist=stoplist, keywords=keywords))


def _read_document(
    root: Path,
    file: Path,
    stoplist: frozenset[str] | None,
    keywords: frozenset[str] | None,
) -> tuple[str, tuple[str, ...], tuple[SignaturePhrase, ...]]:
    text = file.read_text(encoding="utf-8", errors="replace")
    rel = file.relative_to(root).as_posix()
    return (
        rel,
        tuple(tokenize_source(text, stoplist, keywords)),
        tuple(extract_signature_phrases(text)),
    )


def ingest(
    root: str | Path,
    extensions: Sequence[str] = (".java",),
    k1: float = DEFAULT_K1,
    b: float = DEFAULT_B,
    stoplist: frozenset[str] | None = None,
    keywords: frozenset[str] | None = None,
    jobs: int = 1,
) -> CorpusIndex:
    """Walk ``root`` recursively and index every file with a matching
    extension. Document ids are dense and assigned in sorted-path order, so
    the result does not depend on ``jobs``."""
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus root is not a readable directory: {root}")
    files = sorted(
        (p for p in root.rglob("*") if p.is_file() and p.suffix in set(extensions)),
        key=lambda p: p.relative_to(root).as_posix(),
    )
    if not files:
        raise CorpusError(f"no files matching {list(extensions)} under {root}")

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parsed = list(pool.map(lambda f: _read_document(root, f, stoplist, keywords), files))
    else:
        parsed = [_read_document(root, f, stoplist, keywords) for f in files]

    documents = [
        CorpusDocument(doc_id=i, path=rel, tokens=tokens, signatures=signatures)
        for i, (rel, tokens, signatures) in enumerate(parsed)
    ]
    return CorpusIndex(documents=documents, postings=_build_postings(documents), k1=k1, b=b)


def _build_postings(documents: list[CorpusDocument]) -> dict[str, list[tuple[int, int]]]:
    postings: dict[str, list[tuple[int, int]]] = {}
    for doc in documents:
        counts: dict[str, int] = {}
        for token in doc.tokens:
            counts[token] = counts.get(token, 0) + 1
        for term in sorted(counts):
            postings.setdefault(term, []).append((doc.doc_id, counts[term]))
    return postings


def normalize_query(
    query: ReformulatedQuery | Sequence[str],
    stoplist: frozenset[str] | None = None,
    keywords: frozenset[str] | None = None,
) -> list[str]:
    """Run query tokens through the document pipeline (case-fold, split,
    stoplists) so raw identifiers match whole and split index terms."""
    tokens = query.tokens if isinstance(query, ReformulatedQuery) else query
    normalized: list[str] = []
    for token in tokens:
        normalized.extend(
            flatten(preprocess(token, split=True, stoplist=stoplist, keywords=keywords))
        )
    return normalized


def search(
    index: CorpusIndex,
    query: ReformulatedQuery | Sequence[str],
    top_n: int = 10,
    query_id: str = "",
    stoplist: frozenset[str] | None = None,
    keywords: frozenset[str] | None = None,
) -> RankedList:
    """BM25-ranked documents for the query; zero-score documents are dropped
    and ties break by path ascending. Repeated query terms contribute once
    per occurrence."""
    if top_n < 1:
        raise ParameterError(f"top_n must be >= 1, got {top_n}")
    terms = normalize_query(query, stoplist, keywords)
    if not terms:
        raise QueryError("query is empty after normalization")

    n = index.doc_count
    scores: dict[int, float] = {}
    for term in terms:
        plist = index.postings.get(term)
        if not plist:
            continue
        idf = math.log(1.0 + (n - len(plist) + 0.5) / (len(plist) + 0.5))
        for doc_id, tf in plist:
            doc = index.documents[doc_id]
            denom = tf + index.k1 * (
                1.0 - index.b + index.b * doc.length / index.avg_doc_length
            )
            scores[doc_id] = scores.get(doc_id, 0.0) + idf * tf * (index.k1 + 1.0) / denom

    ranked = sorted(
        ((index.documents[d].path, s) for d, s in scores.items() if s > 0.0),
        key=lambda item: (-item[1], item[0]),
    )
    return RankedList(results=tuple(ranked[:top_n]), query_id=query_id)


def pseudo_relevance_feedback(
    index: CorpusIndex,
    baseline_query: Sequence[str],
    k: int = 10,
    stoplist: frozenset[str] | None = None,
    keywords: frozenset[str] | None = None,
) -> list[CorpusDocument]:
    """Top-k documents of the baseline query, naively taken as relevant."""
    if k < 1:
        raise ParameterError(f"feedback depth must be >= 1, got {k}")
    ranked = search(index, baseline_query, top_n=k, stoplist=stoplist, keywords=keywords)
    return [index.document_by_path(path) for path in ranked.paths()]


def _write_record(fh: BinaryIO, payload: object) -> None:
    blob = json.dumps(payload, separators=(",", ":"), sort_keys=True).encode("utf-8")
    fh.write(struct.pack("<I", len(blob)))
    fh.write(blob)


def _read_record(fh: BinaryIO) -> object:
    header = fh.read(4)
    if len(header) != 4:
        raise IndexFormatError("index file truncated: missing record length")
    (length,) = struct.unpack("<I", header)
    blob = fh.read(length)
    if len(blob) != length:
        raise IndexFormatError("index file truncated: incomplete record")
    try:
        return json.loads(blob.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise IndexFormatError(f"index record is not valid JSON: {exc}") from exc


def save_index(index: CorpusIndex, path: str | Path) -> None:
    """Write the index to disk; rejects an index violating its invariants."""
    doc_ids = {doc.doc_id for doc in index.documents}
    for term, plist in index.postings.items():
        for doc_id, tf in plist:
            if tf < 1:
                raise IndexFormatError(f"refusing to save: term {term!r} has tf < 1")
            if doc_id not in doc_ids:
                raise IndexFormatError(f"refusing to save: term {term!r} has unknown doc {doc_id}")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", FORMAT_VERSION))
        _write_record(fh, {"doc_count": index.doc_count, "k1": index.k1, "b": index.b})
        for doc in index.documents:
            _write_record(
                fh,
                {
                    "doc_id": doc.doc_id,
                    "path": doc.path,
                    "tokens": list(doc.tokens),
                    "signatures": [list(p.words) for p in doc.signatures],
                },
            )
        terms = sorted(index.postings)
        _write_record(fh, {"term_count": len(terms)})
        for term in terms:
            _write_record(fh, {"term": term, "postings": [list(p) for p in index.postings[term]]})


def load_index(path: str | Path) -> CorpusIndex:
    """Read an index written by :func:`save_index`; ``load(save(x)) == x``."""
    try:
        fh = open(path, "rb")
    except OSError as exc:
        raise IndexFormatError(f"cannot open index file: {exc}") from exc
    with fh:
        magic = fh.read(len(MAGIC))
        if magic != MAGIC:
            raise IndexFormatError(f"not an index file: expected magic {MAGIC!r}, found {magic!r}")
        version_bytes = fh.read(4)
        if len(version_bytes) != 4:
            raise IndexFormatError("index file truncated: missing format version")
        (version,) = struct.unpack("<I", version_bytes)
        if version != FORMAT_VERSION:
            raise IndexFormatError(
                f"unsupported index format: expected version {FORMAT_VERSION}, found {version}"
            )
        header = _read_record(fh)
        if not isinstance(header, dict) or "doc_count" not in header:
            raise IndexFormatError("index header record is malformed")
        documents: list[CorpusDocument] = []
        for _ in range(int(header["doc_count"])):
            rec = _read_record(fh)
            if not isinstance(rec, dict):
                raise IndexFormatError("document record is malformed")
            documents.append(
                CorpusDocument(
                    doc_id=int(rec["doc_id"]),
                    path=str(rec["path"]),
                    tokens=tuple(rec["tokens"]),
                    signatures=tuple(SignaturePhrase(tuple(w)) for w in rec["signatures"]),
                )
            )
        meta = _read_record(fh)
        if not isinstance(meta, dict) or "term_count" not in meta:
            raise IndexFormatError("postings header record is malformed")
        postings: dict[str, list[tuple[int, int]]] = {}
        for _ in range(int(meta["term_count"])):
            rec = _read_record(fh)
            if not isinstance(rec, dict):
                raise IndexFormatError("postings record is malformed")
            postings[str(rec["term"])] = [(int(d), int(tf)) for d, tf in rec["postings"]]
    return CorpusIndex(
        documents=documents, postings=postings, k1=float(header["k1"]), b=float(header["b"])
    )
