"""Input coercion shared by the estimators and the evaluation helpers."""

from __future__ import annotations

import os
from typing import Iterable

from .corpus import (
    Corpus,
    Sentence,
    parse_raw_sentence,
    parse_underscore_sentence,
)
from .exceptions import NeedsLabels
from .resources import Lexicon, NameLists, load_lexicon


def _to_sentence(item, labeled: bool) -> Sentence:
    if isinstance(item, Sentence):
        return item
    if isinstance(item, str):
        return parse_underscore_sentence(item) if labeled else parse_raw_sentence(item)
    return Sentence.from_syllables(list(item))


def check_sentences(X, labeled: bool = False) -> list[Sentence]:
    """Coerce ``X`` to a list of sentences.

    Accepts a :class:`Corpus`, a single :class:`Sentence`, or an iterable of
    sentences, lines or syllable lists. Strings are parsed as segmented lines
    when ``labeled`` is set and as raw lines otherwise. With ``labeled`` every
    sentence must carry gap labels.
    """
    if isinstance(X, Sentence):
        X = [X]
    elif isinstance(X, str):
        raise TypeError("expected an iterable of sentences, got a single string")
    sentences = [_to_sentence(item, labeled) for item in X]
    if labeled and not all(s.is_labeled for s in sentences):
        raise NeedsLabels("gold gap labels are required")
    return sentences


def check_corpus(X, labeled: bool = False) -> Corpus:
    if isinstance(X, Corpus):
        if labeled and not X.is_labeled and len(X):
            raise NeedsLabels(f"{X.source_path}: corpus is unlabeled")
        return X
    return Corpus(tuple(check_sentences(X, labeled)))


def check_lexicon(lexicon) -> Lexicon:
    if lexicon is None:
        return Lexicon()
    if isinstance(lexicon, Lexicon):
        return lexicon
    if isinstance(lexicon, (str, os.PathLike)):
        return load_lexicon(lexicon)
    return Lexicon(_split_entries(lexicon))


def _split_entries(entries: Iterable) -> list[list[str]]:
    return [e.split() if isinstance(e, str) else list(e) for e in entries]


def check_name_lists(name_lists) -> NameLists:
    if name_lists is None:
        return NameLists()
    if isinstance(name_lists, NameLists):
        return name_lists
    family, middle = name_lists
    return NameLists.from_iterables(family, middle)
