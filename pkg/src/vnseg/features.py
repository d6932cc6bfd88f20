"""Feature templates for one gap decision.

A gap context is the decision between syllable ``i`` and ``i + 1`` of a
sentence, together with the labels already assigned to gaps ``0..i-1``.
Features are strings; four groups are available and can be combined:

``base``  syllable and type n-grams, lexicon n-gram hits, reduplication and
          person-name flags (prefix ``B``)
``long``  lexicon hits for 5..9-syllable words covering the current syllable
          (prefix ``L``)
``sep``   lexicon membership pattern in the window after a separable
          syllable or a partially built multi-syllable word (prefix ``A``)
``sfx``   stem and context of a partial word followed by a suffix (prefix ``S``)

Out-of-range positions read as the sentinels ``<s>`` / ``</s>`` with type
``OTHER``; any n-gram touching a sentinel is not a lexicon entry.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus import Label, Sentence, SyllableType
from .resources import BOS, EOS, Lexicon, NameLists
from .stats import DerivedStats

GROUPS = ("base", "long", "sep", "sfx")
BIAS = "BIAS"

_LOWER = SyllableType.LOWER
_UPPER = SyllableType.UPPER
_OTHER = SyllableType.OTHER


@dataclass(frozen=True)
class FeatureConfig:
    use_base: bool = True
    use_long: bool = False
    use_sep: bool = False
    use_sfx: bool = False

    def __post_init__(self):
        if not (self.use_base or self.use_long or self.use_sep or self.use_sfx):
            raise ValueError("at least one feature group must be enabled")

    @classmethod
    def from_groups(cls, groups: str | Iterable[str]) -> "FeatureConfig":
        if isinstance(groups, str):
            groups = [g.strip() for g in groups.split(",") if g.strip()]
        groups = set(groups)
        unknown = groups - set(GROUPS)
        if unknown:
            raise ValueError(f"unknown feature groups: {sorted(unknown)}")
        return cls(*(g in groups for g in GROUPS))

    @property
    def groups(self) -> tuple[str, ...]:
        flags = (self.use_base, self.use_long, self.use_sep, self.use_sfx)
        return tuple(g for g, on in zip(GROUPS, flags) if on)

    def __str__(self) -> str:
        return ",".join(self.groups)


class _Window:
    """Padded view of one sentence with memoized lexicon lookups."""

    __slots__ = ("n", "f", "t", "lexicon", "_memo")

    def __init__(self, sentence: Sentence, lexicon: Lexicon):
        self.n = len(sentence)
        self.f = sentence.norm_syllables
        self.t = sentence.types
        self.lexicon = lexicon
        self._memo: dict = {}

    def syl(self, j: int) -> str:
        if j < 0:
            return BOS
        if j >= self.n:
            return EOS
        return self.f[j]

    def typ(self, j: int) -> SyllableType:
        return self.t[j] if 0 <= j < self.n else _OTHER

    def gram(self, j: int, length: int) -> str:
        return " ".join(self.syl(k) for k in range(j, j + length))

    def in_dict(self, j: int, length: int) -> bool:
        if j < 0 or j + length > self.n:
            return False
        key = (j, length)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = self.lexicon.contains(self.f[j : j + length])
        return hit


@dataclass
class GapContext:
    sentence: Sentence
    i: int
    prev_labels: Sequence[Label]
    lexicon: Lexicon = field(default_factory=Lexicon, repr=False)
    _window: _Window | None = field(default=None, repr=False)

    def __post_init__(self):
        if not 0 <= self.i < len(self.sentence) - 1:
            raise IndexError(f"gap {self.i} out of range for {len(self.sentence)} syllables")
        if len(self.prev_labels) != self.i:
            raise ValueError("prev_labels must cover exactly the gaps before i")
        if self._window is None:
            self._window = _Window(self.sentence, self.lexicon)


def _window(ctx: GapContext, lexicon: Lexicon | None) -> _Window:
    if lexicon is None or ctx._window.lexicon is lexicon:
        return ctx._window
    return _Window(ctx.sentence, lexicon)


def extract_base(ctx: GapContext, lexicon: Lexicon | None = None,
                 name_lists: NameLists | None = None) -> Counter:
    w = _window(ctx, lexicon)
    i = ctx.i
    out = []
    for j in range(i - 2, i + 3):
        out.append(f"B1[{j - i:+d}]={w.syl(j)}")
    for j in range(i - 2, i + 2):
        out.append(f"B2[{j - i:+d}]={w.syl(j)} {w.syl(j + 1)}")
    # dictionary hits: (template, n-gram length, first j, last j)
    for tpl, length, lo, hi in ((3, 2, i - 2, i + 1), (4, 3, i - 2, i), (5, 4, i - 3, i)):
        for j in range(lo, hi + 1):
            if w.in_dict(j, length):
                out.append(f"B{tpl}[{i - j:+d}]")
    for tpl, length, lo, hi in ((6, 2, i - 2, i + 1), (7, 3, i - 2, i)):
        for j in range(lo, hi + 1):
            if w.typ(j) is not _LOWER and not w.in_dict(j, length):
                types = " ".join(w.typ(k).value for k in range(j, j + length))
                out.append(f"B{tpl}={types}")
    ti, tn = w.typ(i), w.typ(i + 1)
    fi = w.syl(i)
    if ti is _LOWER and tn is _LOWER and fi == w.syl(i + 1):
        out.append("B8")
    if ti is _UPPER and tn is _UPPER and name_lists is not None:
        if fi in name_lists.family_names:
            out.append("B9")
        if fi in name_lists.middle_names:
            out.append("B10")
    return Counter(out)


def extract_long(ctx: GapContext, lexicon: Lexicon | None = None) -> Counter:
    w = _window(ctx, lexicon)
    i = ctx.i
    out = []
    for n in range(5, 10):
        if n > w.lexicon.max_len:
            break
        for j in range(i - (n - 1), i + 1):
            if w.in_dict(j, n):
                out.append(f"L{n}[{i - j}]")
    return Counter(out)


def _sep_case(ctx: GapContext, w: _Window, stats: DerivedStats) -> tuple[int, int] | None:
    """Active ambiguity case and its anchor, longest span first."""
    i, prev = ctx.i, ctx.prev_labels
    for k in (4, 3, 2):
        s = i - (k - 1)
        if s < 0 or not w.in_dict(s, k + 1):
            continue
        if s > 0 and prev[s - 1] != Label.SPACE:
            continue
        if all(prev[g] == Label.UNDERSCORE for g in range(s, i)):
            return k, s
    if w.syl(i) in stats.separable and (i == 0 or prev[i - 1] == Label.SPACE):
        return 1, i
    return None


def extract_sep(ctx: GapContext, lexicon: Lexicon | None = None,
                stats: DerivedStats | None = None) -> Counter:
    if stats is None:
        stats = DerivedStats()
    w = _window(ctx, lexicon)
    case = _sep_case(ctx, w, stats)
    if case is None:
        return Counter()
    c, s = case
    out = []
    for n in range(2, 6):
        for j in range(s, s + 6 - n):
            out.append(f"A{c}:{n}g[{j - s}]={int(w.in_dict(j, n))}")
    return Counter(out)


def extract_sfx(ctx: GapContext, stats: DerivedStats | None = None) -> Counter:
    if stats is None:
        return Counter()
    w = ctx._window
    i, prev = ctx.i, ctx.prev_labels
    nxt = w.syl(i + 1)
    if nxt not in stats.suffixes:
        return Counter()
    width = 1
    for g in range(i - 1, -1, -1):
        if prev[g] != Label.UNDERSCORE:
            break
        width += 1
    if width not in (2, 3):
        return Counter()
    off = width - 2
    stem = w.gram(i - 1 - off, width)
    return Counter([
        f"S:stem={stem}",
        f"S:sfx={nxt}",
        f"S:l1={w.syl(i - 2 - off)}",
        f"S:l2={w.syl(i - 3 - off)}",
        f"S:r1={w.syl(i + 2)}",
        f"S:r2={w.syl(i + 3)}",
    ])


def extract_all(ctx: GapContext, config: FeatureConfig, lexicon: Lexicon | None = None,
                name_lists: NameLists | None = None,
                stats: DerivedStats | None = None) -> Counter:
    feats = Counter()
    if config.use_base:
        feats.update(extract_base(ctx, lexicon, name_lists))
    if config.use_long:
        feats.update(extract_long(ctx, lexicon))
    if config.use_sep:
        feats.update(extract_sep(ctx, lexicon, stats))
    if config.use_sfx:
        feats.update(extract_sfx(ctx, stats))
    feats[BIAS] += 1
    return feats


class FeatureVocabulary:
    """Bidirectional feature string <-> column index map."""

    def __init__(self, features: Iterable[str] = (), frozen: bool = False):
        self.index: dict[str, int] = {}
        self.features: list[str] = []
        self.frozen = False
        for f in features:
            self.add(f)
        self.frozen = frozen

    def add(self, feature: str) -> int | None:
        idx = self.index.get(feature)
        if idx is None and not self.frozen:
            idx = self.index[feature] = len(self.features)
            self.features.append(feature)
        return idx

    def freeze(self) -> "FeatureVocabulary":
        self.frozen = True
        return self

    def __len__(self) -> int:
        return len(self.features)

    def __contains__(self, feature: str) -> bool:
        return feature in self.index

    def __eq__(self, other) -> bool:
        return isinstance(other, FeatureVocabulary) and self.features == other.features


def intern(vocab: FeatureVocabulary, multiset: Counter) -> list[tuple[int, int]]:
    """Map a feature multiset to sorted ``(index, count)`` pairs.

    A frozen vocabulary drops unseen features; an open one grows.
    """
    pairs = []
    for feat, count in multiset.items():
        idx = vocab.add(feat)
        if idx is not None:
            pairs.append((idx, count))
    pairs.sort()
    return pairs


def sentence_contexts(sentence: Sentence, lexicon: Lexicon, labels: Sequence[Label]):
    """Gap contexts of a sentence under ``labels`` (gold, for training)."""
    win = _Window(sentence, lexicon)
    for i in range(len(sentence) - 1):
        yield GapContext(sentence, i, labels[:i], lexicon, win)
