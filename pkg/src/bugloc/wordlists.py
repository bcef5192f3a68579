"""Bundled word lists: English stop words, Java reserved words, POS lexicons.

Lists live under ``bugloc/data`` as plain text, one entry per line. Stop-word
entries containing apostrophes (``aren't``) are additionally indexed by their
punctuation-split parts (``aren``, ``t``) so they still match after the
tokenizer has stripped punctuation.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from pathlib import Path

_WORD = re.compile(r"[a-z]+")


def _read_lines(name: str) -> list[str]:
    text = resources.files("bugloc.data").joinpath(name).read_text(encoding="utf-8")
    return [line.strip().lower() for line in text.splitlines() if line.strip()]


def load_wordfile(path: str | Path) -> frozenset[str]:
    """Load a user-supplied override list (one word per line)."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return _expand([line.strip().lower() for line in lines if line.strip()])


def _expand(entries: list[str]) -> frozenset[str]:
    out: set[str] = set()
    for entry in entries:
        out.add(entry)
        out.update(_WORD.findall(entry))
    return frozenset(out)


@lru_cache(maxsize=None)
def stop_words() -> frozenset[str]:
    return _expand(_read_lines("stopwords.txt"))


@lru_cache(maxsize=None)
def java_keywords() -> frozenset[str]:
    return frozenset(_read_lines("java_keywords.txt"))


@lru_cache(maxsize=None)
def function_words() -> frozenset[str]:
    return _expand(_read_lines("function_words.txt"))


@lru_cache(maxsize=None)
def verb_lexicon() -> frozenset[str]:
    return frozenset(_read_lines("verbs.txt"))


@lru_cache(maxsize=None)
def adjective_lexicon() -> frozenset[str]:
    return frozenset(_read_lines("adjectives.txt"))
