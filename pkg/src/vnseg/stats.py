"""Statistics derived from a labeled training corpus.

Separable syllables stand alone more often than they start longer words;
suffixes are lowercase syllables that frequently close out-of-vocabulary
three- and four-syllable words. Both sets keep only items whose frequency
is strictly above the mean of their candidate pool.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .corpus import Corpus, SyllableType
from .exceptions import NeedsLabels
from .resources import Lexicon, in_dict

LENGTH_BUCKETS = ("1", "2", "3", "4", "5-9", ">9")


@dataclass(frozen=True)
class DerivedStats:
    separable: frozenset = frozenset()
    suffixes: frozenset = frozenset()
    sep_counts: dict = field(default_factory=dict)  # syllable -> (a, b)
    suffix_counts: dict = field(default_factory=dict)


def _require_labels(corpus: Corpus) -> None:
    if not all(s.is_labeled for s in corpus):
        raise NeedsLabels("statistics need a word-segmented corpus")


def _word_tokens(corpus: Corpus):
    for sent in corpus:
        for start, end in sent.words():
            yield sent, start, end


def compute_separable(corpus: Corpus) -> tuple[frozenset, dict]:
    _require_labels(corpus)
    alone: Counter = Counter()
    initial: Counter = Counter()
    for sent, start, end in _word_tokens(corpus):
        f = sent.norm_syllables[start]
        if start == end:
            alone[f] += 1
        else:
            initial[f] += 1
    counts = {s: (alone[s], initial[s]) for s in alone.keys() | initial.keys()}
    candidates = {s: a + b for s, (a, b) in counts.items() if a > b}
    if not candidates:
        return frozenset(), counts
    mean = sum(candidates.values()) / len(candidates)
    return frozenset(s for s, total in candidates.items() if total > mean), counts


def compute_suffixes(corpus: Corpus, lexicon: Lexicon) -> tuple[frozenset, dict]:
    _require_labels(corpus)
    counts: Counter = Counter()
    for sent, start, end in _word_tokens(corpus):
        length = end - start + 1
        if length not in (3, 4):
            continue
        if sent.types[end] is not SyllableType.LOWER:
            continue
        if in_dict(lexicon, sent.norm_syllables[start : end + 1]):
            continue
        counts[sent.norm_syllables[end]] += 1
    counts = dict(counts)
    if not counts:
        return frozenset(), counts
    mean = sum(counts.values()) / len(counts)
    return frozenset(s for s, c in counts.items() if c > mean), counts


def derive_stats(corpus: Corpus, lexicon: Lexicon) -> DerivedStats:
    separable, sep_counts = compute_separable(corpus)
    suffixes, suffix_counts = compute_suffixes(corpus, lexicon)
    return DerivedStats(separable, suffixes, sep_counts, suffix_counts)


def length_bucket(n_syllables: int) -> str:
    if n_syllables <= 4:
        return str(n_syllables)
    return "5-9" if n_syllables <= 9 else ">9"


def word_length_distribution(corpus: Corpus) -> dict[str, float]:
    """Percentage of unique (normalized) words per syllable-count bucket."""
    _require_labels(corpus)
    unique = {
        sent.norm_syllables[start : end + 1] for sent, start, end in _word_tokens(corpus)
    }
    counts = Counter(length_bucket(len(w)) for w in unique)
    total = len(unique)
    return {
        b: (100.0 * counts[b] / total if total else 0.0) for b in LENGTH_BUCKETS
    }
