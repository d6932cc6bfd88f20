"""Reading, normalizing and rendering word-segmented corpora.

A segmented line joins the syllables of one word with ``_`` and separates
words with white space::

    hiện_đại_hoá đất_nước

Each gap between adjacent syllables gets a :class:`Label`: ``UNDERSCORE``
when the gap is word-internal, ``SPACE`` when it is a word boundary.
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources as _resources
from typing import Iterable, Sequence

import numpy as np

from .exceptions import (
    EmptySentence,
    LabelArity,
    MalformedToken,
    MixedCorpus,
    NotEnoughData,
)


class Label(enum.IntEnum):
    SPACE = 0
    UNDERSCORE = 1

    @property
    def sign(self) -> int:
        return 1 if self is Label.UNDERSCORE else -1


class SyllableType(enum.Enum):
    LOWER = "LOWER"
    UPPER = "UPPER"
    ALL_UPPER = "ALL_UPPER"
    OTHER = "OTHER"


@lru_cache(maxsize=1)
def _tone_map() -> tuple[tuple[str, str], ...]:
    text = _resources.files("vnseg").joinpath("data/tone_map.tsv").read_text("utf-8")
    pairs = []
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        old, new = line.split("\t")
        pairs.append((old, new))
    return tuple(pairs)


@lru_cache(maxsize=65536)
def normalize_syllable(s: str) -> str:
    """Return the lowercase-simplified form used for lookups and lexical features.

    NFC + lowercase, then old-style tone placement at the end of the syllable
    (``hóa``, ``thủy``) is moved to the new-style position (``hoá``, ``thuỷ``).
    """
    f = unicodedata.normalize("NFC", s).lower()
    for old, new in _tone_map():
        if f.endswith(old):
            return f[: -len(old)] + new
    return f


def classify_syllable_type(s: str) -> SyllableType:
    if s.isalpha() and s.islower():
        return SyllableType.LOWER
    if len(s) >= 2 and s.isalpha() and s.isupper():
        return SyllableType.ALL_UPPER
    first = s[:1]
    if first.isalpha() and first.isupper() and all(
        c.islower() for c in s[1:] if c.isalpha()
    ):
        return SyllableType.UPPER
    return SyllableType.OTHER


@dataclass(frozen=True)
class Sentence:
    """A syllable sequence with optional per-gap labels."""

    raw_syllables: tuple[str, ...]
    norm_syllables: tuple[str, ...] = field(repr=False)
    types: tuple[SyllableType, ...] = field(repr=False)
    gap_labels: tuple[Label, ...] | None = None

    def __post_init__(self):
        n = len(self.raw_syllables)
        if n == 0:
            raise EmptySentence("sentence has no syllables")
        if len(self.norm_syllables) != n or len(self.types) != n:
            raise ValueError("syllable, normal form and type lists differ in length")
        if self.gap_labels is not None and len(self.gap_labels) != n - 1:
            raise LabelArity(
                f"{n} syllables need {n - 1} gap labels, got {len(self.gap_labels)}"
            )

    @classmethod
    def from_syllables(
        cls, syllables: Sequence[str], gap_labels: Sequence[Label] | None = None
    ) -> "Sentence":
        raw = tuple(unicodedata.normalize("NFC", s) for s in syllables)
        for s in raw:
            if not s or "_" in s or any(c.isspace() for c in s):
                raise MalformedToken(f"invalid syllable {s!r}")
        labels = None if gap_labels is None else tuple(Label(v) for v in gap_labels)
        return cls(
            raw,
            tuple(normalize_syllable(s) for s in raw),
            tuple(classify_syllable_type(s) for s in raw),
            labels,
        )

    def __len__(self) -> int:
        return len(self.raw_syllables)

    @property
    def is_labeled(self) -> bool:
        return self.gap_labels is not None

    def with_labels(self, gap_labels: Sequence[Label]) -> "Sentence":
        return Sentence(
            self.raw_syllables,
            self.norm_syllables,
            self.types,
            tuple(Label(v) for v in gap_labels),
        )

    def words(self) -> list[tuple[int, int]]:
        """Inclusive ``(start, end)`` syllable spans of the labeled words."""
        if self.gap_labels is None:
            raise LabelArity("sentence is unlabeled")
        spans = []
        start = 0
        for i, lab in enumerate(self.gap_labels):
            if lab is Label.SPACE:
                spans.append((start, i))
                start = i + 1
        spans.append((start, len(self) - 1))
        return spans


@dataclass(frozen=True)
class Corpus:
    sentences: tuple[Sentence, ...]
    source_path: str = "<memory>"

    def __post_init__(self):
        labeled = {s.is_labeled for s in self.sentences}
        if len(labeled) > 1:
            raise MixedCorpus(f"{self.source_path}: mixes labeled and unlabeled sentences")

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def __getitem__(self, idx):
        return self.sentences[idx]

    @property
    def is_labeled(self) -> bool:
        return bool(self.sentences) and self.sentences[0].is_labeled


def parse_underscore_sentence(line: str) -> Sentence:
    """Parse one segmented line (``a_b c``) into a labeled sentence."""
    tokens = unicodedata.normalize("NFC", line).split()
    if not tokens:
        raise EmptySentence("empty line")
    syllables: list[str] = []
    labels: list[Label] = []
    for t, token in enumerate(tokens):
        parts = token.split("_")
        if any(not p for p in parts):
            raise MalformedToken(f"malformed token {token!r}")
        if t:
            labels.append(Label.SPACE)
        for k, p in enumerate(parts):
            if k:
                labels.append(Label.UNDERSCORE)
            syllables.append(p)
    return Sentence.from_syllables(syllables, labels)


def parse_raw_sentence(line: str) -> Sentence:
    """Parse an unsegmented line; underscores are rejected."""
    tokens = unicodedata.normalize("NFC", line).split()
    if not tokens:
        raise EmptySentence("empty line")
    return Sentence.from_syllables(tokens)


def render_segmentation(sentence: Sentence, gap_labels: Sequence[Label] | None = None) -> str:
    labels = sentence.gap_labels if gap_labels is None else tuple(gap_labels)
    if labels is None or len(labels) != len(sentence) - 1:
        raise LabelArity("gap labels missing or of wrong length")
    out = [sentence.raw_syllables[0]]
    for lab, syl in zip(labels, sentence.raw_syllables[1:]):
        out.append("_" if lab == Label.UNDERSCORE else " ")
        out.append(syl)
    return "".join(out)


def read_corpus(path, labeled: bool = True) -> Corpus:
    """Read a UTF-8 corpus file, one sentence per line; blank lines are skipped."""
    parse = parse_underscore_sentence if labeled else parse_raw_sentence
    sentences = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                sentences.append(parse(line))
            except (MalformedToken, EmptySentence) as exc:
                raise type(exc)(f"{path}:{lineno}: {exc}") from None
    return Corpus(tuple(sentences), str(path))


def write_corpus(corpus: Iterable[Sentence], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in corpus:
            fh.write(render_segmentation(s) + "\n")


def split_folds(corpus: Corpus, k: int, seed: int) -> list[tuple[Corpus, Corpus]]:
    """Shuffle sentences with ``seed`` and cut them into ``k`` balanced folds.

    Returns ``(train, test)`` pairs; fold sizes differ by at most one, larger
    folds first.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    n = len(corpus)
    if k > n:
        raise NotEnoughData(f"cannot make {k} folds from {n} sentences")
    order = np.random.default_rng(seed).permutation(n)
    folds = []
    for test_idx in np.array_split(order, k):
        test_set = set(test_idx.tolist())
        train = tuple(corpus[i] for i in sorted(set(range(n)) - test_set))
        test = tuple(corpus[i] for i in sorted(test_set))
        folds.append(
            (Corpus(train, corpus.source_path), Corpus(test, corpus.source_path))
        )
    return folds
