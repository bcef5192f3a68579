"""Text normalization: sentence segmentation, token splitting, stop-word and
Java-keyword removal, optional stemming.

The same pipeline is applied to bug-report text, to source files at index
time, and to query tokens at search time, so whole identifiers and their
split parts always match across the two sides.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import ParameterError
from .stemmer import stem
from .wordlists import java_keywords, stop_words


class TokenOrigin(Enum):
    ORIGINAL = "original"
    SPLIT_PART = "split_part"


@dataclass(frozen=True)
class Token:
    surface: str
    lower: str
    origin: TokenOrigin


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]

    def lowers(self) -> list[str]:
        return [t.lower for t in self.tokens]


# A dot ends a sentence only when it is not glueing identifier segments
# together ("foo.bar" stays intact, "directory. Next" splits).
_SENTENCE_BOUNDARY = re.compile(r"[?!;\n]|\.(?![A-Za-z0-9_$])")

# Raw word tokens: identifier characters plus dots; surrounding punctuation
# acts as a separator.
_RAW_TOKEN = re.compile(r"[A-Za-z0-9_$.]*[A-Za-z0-9_$][A-Za-z0-9_$.]*")

_CAMEL = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+")
_NON_ALPHA_RUN = re.compile(r"[^A-Za-z]+")
_NON_ALPHA = re.compile(r"[^a-z]")


def split_identifier(token: str) -> list[str]:
    """Split a complex token on case boundaries (aA, AAa), underscores, dots,
    dollar signs, and digits; parts come back case-folded in original order.

    A token with no boundary returns itself; a token with no letters at all
    returns an empty list.
    """
    if not token:
        raise ParameterError("split_identifier requires a non-empty token")
    parts: list[str] = []
    for run in _NON_ALPHA_RUN.split(token):
        parts.extend(m.lower() for m in _CAMEL.findall(run))
    return parts


def _expand_raw(raw: str, split: bool) -> list[Token]:
    """Turn one raw token into output tokens: the whole form plus, when
    splitting, its parts. The whole form is emitted only when it carries no
    punctuation of its own (camelCase yes, snake_case no)."""
    out: list[Token] = []
    for piece in raw.split("."):
        if not piece:
            continue
        whole = _NON_ALPHA.sub("", piece.lower())
        if not whole:
            continue
        if not split:
            out.append(Token(piece, whole, TokenOrigin.ORIGINAL))
            continue
        parts = split_identifier(piece)
        if parts == [whole]:
            out.append(Token(piece, whole, TokenOrigin.ORIGINAL))
            continue
        if piece.isalpha():
            out.append(Token(piece, whole, TokenOrigin.ORIGINAL))
        out.extend(Token(piece, part, TokenOrigin.SPLIT_PART) for part in parts)
    return out


def preprocess(
    text: str,
    *,
    split: bool = True,
    stem_tokens: bool = False,
    keep_stopwords: bool = False,
    stoplist: frozenset[str] | None = None,
    keywords: frozenset[str] | None = None,
) -> list[Sentence]:
    """Segment text into sentences of normalized tokens.

    Punctuation and digits are stripped, stop words and Java keywords removed
    (unless ``keep_stopwords``), and complex tokens split with the whole form
    retained alongside its parts (unless ``split`` is off). Stemming is
    applied only on request; the retrieval pipeline leaves it off.
    """
    if not text:
        return []
    if stoplist is None:
        stoplist = stop_words()
    if keywords is None:
        keywords = java_keywords()
    drop = stoplist | keywords if not keep_stopwords else frozenset()

    sentences: list[Sentence] = []
    for chunk in _SENTENCE_BOUNDARY.split(text):
        tokens: list[Token] = []
        for raw in _RAW_TOKEN.findall(chunk):
            for token in _expand_raw(raw, split):
                if token.lower in drop:
                    continue
                if stem_tokens:
                    token = Token(token.surface, stem(token.lower), token.origin)
                tokens.append(token)
        if tokens:
            sentences.append(Sentence(tuple(tokens)))
    return sentences


def flatten(sentences: list[Sentence]) -> list[str]:
    """All token lower forms across sentences, in order."""
    return [t.lower for s in sentences for t in s.tokens]
