"""Part-of-speech ranks and the pluggable tagger used by the POS text graph.

Ranks follow the three-level scheme: nouns are primary, verbs and adjectives
secondary, adverbs tertiary; closed-class function words rank as OTHER and
never enter a graph. The default tagger is lexicon plus suffix heuristics;
anything implementing ``PosTagger`` can be substituted.
"""

from __future__ import annotations

from enum import Enum
from typing import Protocol, Sequence

from .errors import ParameterError
from .preprocess import Sentence, Token
from .wordlists import adjective_lexicon, function_words, verb_lexicon


class PosRank(Enum):
    PRIMARY = "primary"      # noun
    SECONDARY = "secondary"  # verb, adjective
    TERTIARY = "tertiary"    # adverb
    OTHER = "other"          # function word


class PosTagger(Protocol):
    def tag_words(self, words: Sequence[str]) -> list[PosRank]: ...


_SECONDARY_SUFFIXES = ("ize", "ate", "ify", "ous", "ful", "ive")


class LexiconTagger:
    """Closed-class lexicon plus suffix heuristics; unknown words are nouns."""

    def __init__(self) -> None:
        self._function = function_words()
        self._verbs = verb_lexicon()
        self._adjectives = adjective_lexicon()

    def tag_word(self, word: str) -> PosRank:
        w = word.lower()
        if w in self._function:
            return PosRank.OTHER
        if w in self._verbs or w in self._adjectives:
            return PosRank.SECONDARY
        if w.endswith("ly"):
            return PosRank.TERTIARY
        if w.endswith(_SECONDARY_SUFFIXES):
            return PosRank.SECONDARY
        return PosRank.PRIMARY

    def tag_words(self, words: Sequence[str]) -> list[PosRank]:
        return [self.tag_word(w) for w in words]


_default_tagger: LexiconTagger | None = None


def default_tagger() -> LexiconTagger:
    global _default_tagger
    if _default_tagger is None:
        _default_tagger = LexiconTagger()
    return _default_tagger


def pos_tag(
    sentence: Sentence, tagger: PosTagger | None = None
) -> list[tuple[Token, PosRank]]:
    """Assign one rank per token; exactly as many tags as tokens."""
    if not sentence.tokens:
        raise ParameterError("pos_tag requires a non-empty sentence")
    if tagger is None:
        tagger = default_tagger()
    ranks = tagger.tag_words([t.lower for t in sentence.tokens])
    return list(zip(sentence.tokens, ranks))
