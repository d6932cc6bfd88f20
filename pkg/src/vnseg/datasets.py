"""Seeded synthetic corpora for tests, demos and sanity checks."""

from __future__ import annotations

import itertools

import numpy as np

from .corpus import Corpus, Label, Sentence
from .resources import Lexicon

_ONSETS = ("b", "c", "d", "đ", "g", "h", "k", "l", "m", "n", "ph", "r", "s", "t",
           "th", "tr", "v", "x", "ch", "kh", "ng", "nh")
_RHYMES = ("a", "à", "á", "ai", "an", "ăn", "âm", "e", "ê", "i", "o", "ô", "ơ", "u",
           "ư", "ang", "anh", "ong", "ương", "iên", "ươi", "ôi", "ay", "ao", "inh",
           "ung", "ất", "ước", "ọc", "ệ")


def syllable_inventory(n: int, seed: int = 0) -> list[str]:
    """``n`` distinct lowercase pseudo-Vietnamese syllables."""
    pool = [o + r for o, r in itertools.product(_ONSETS, _RHYMES)]
    if n > len(pool):
        raise ValueError(f"at most {len(pool)} syllables available")
    rng = np.random.default_rng(seed)
    return [pool[k] for k in rng.choice(len(pool), size=n, replace=False)]


def sentence_from_words(words) -> Sentence:
    syllables, labels = [], []
    for k, word in enumerate(words):
        if k:
            labels.append(Label.SPACE)
        for m, syl in enumerate(word):
            if m:
                labels.append(Label.UNDERSCORE)
            syllables.append(syl)
    return Sentence.from_syllables(syllables, labels)


def make_synthetic_language(n_multi=50, n_single=30, n_train=2000, n_test=500,
                            min_words=3, max_words=12, seed=0):
    """Random lexicon plus train/test corpora sampled from it.

    Multi-syllable words have 2-4 syllables (mostly 2) drawn from a shared
    syllable pool, so syllables recur across words. Returns
    ``(lexicon, train, test)``.
    """
    rng = np.random.default_rng(seed)
    syllables = syllable_inventory(n_single + 2 * n_multi, seed)
    singles = [(s,) for s in syllables[:n_single]]
    pool = syllables[n_single:]
    multi: list[tuple[str, ...]] = []
    seen = set(singles)
    while len(multi) < n_multi:
        length = int(rng.choice([2, 3, 4], p=[0.75, 0.18, 0.07]))
        word = tuple(pool[k] for k in rng.choice(len(pool), size=length, replace=False))
        if word not in seen:
            seen.add(word)
            multi.append(word)
    vocab = singles + multi
    weights = np.array([3.0] * len(singles) + [1.0] * len(multi))
    weights /= weights.sum()

    def sample(n):
        out = []
        for _ in range(n):
            k = int(rng.integers(min_words, max_words + 1))
            picks = rng.choice(len(vocab), size=k, p=weights)
            out.append(sentence_from_words(vocab[p] for p in picks))
        return Corpus(tuple(out), "<synthetic>")

    lexicon = Lexicon(vocab)
    return lexicon, sample(n_train), sample(n_test)


def make_ambiguity_corpus(n_sentences=800, n_separable=15, n_joining=200, n_fillers=100,
                          seed=0):
    """Corpus rich in overlap-ambiguous triples ``x y z``.

    Both ``x y`` and ``y z`` are lexicon words. When ``x`` is a separable
    syllable the reading is ``x y_z``; when ``x`` is a joining syllable it is
    ``x_y z``. When ``y`` is followed by a syllable it does not combine with,
    the readings swap: separable syllables form ``x_y`` and joining ones stand
    alone. The ``y z`` dictionary hit therefore points in opposite directions
    for the two syllable classes, which per-syllable weights cannot express.
    Returns ``(lexicon, corpus)``.
    """
    rng = np.random.default_rng(seed)
    syl = syllable_inventory(n_separable + n_joining + 160 + n_fillers, seed + 1)
    sep = syl[:n_separable]
    join = syl[n_separable:n_separable + n_joining]
    rest = syl[n_separable + n_joining:]
    ys, zs, fillers = rest[:60], rest[60:160], rest[160:]
    right = {y: [zs[int(k)] for k in rng.choice(len(zs), size=2, replace=False)] for y in ys}
    left = {x: [ys[int(k)] for k in rng.choice(len(ys), size=4, replace=False)]
            for x in sep + join}
    entries = [(y, z) for y in ys for z in right[y]]
    entries += [(x, y) for x in sep + join for y in left[x]]
    entries += [(f,) for f in fillers]
    lexicon = Lexicon(entries)

    def pick(seq):
        return seq[int(rng.integers(len(seq)))]

    sentences = []
    for _ in range(n_sentences):
        words = [(pick(fillers),)]
        for _ in range(int(rng.integers(2, 6))):
            r = rng.random()
            if r < 0.3:
                x = pick(sep)
                y = pick(left[x])
                words += [(x,), (y, pick(right[y]))]
            elif r < 0.5:
                x = pick(sep)
                words += [(x, pick(left[x])), (pick(fillers),)]
            elif r < 0.7:
                x = pick(join)
                y = pick(left[x])
                words += [(x, y), (pick(right[y]),)]
            elif r < 0.8:
                x = pick(join)
                words += [(x,), (pick(left[x]),), (pick(fillers),)]
            else:
                words.append((pick(fillers),))
        sentences.append(sentence_from_words(words))
    return lexicon, Corpus(tuple(sentences), "<ambiguity>")


def make_suffix_corpus(n_train=800, n_test=200, n_stems=120, seed=0):
    """Corpus where a suffix (``hoá``) closes out-of-vocabulary words.

    Stems of two or three syllables are lexicon words; ``stem_hoá`` never
    is. Training and test use disjoint stems, so every suffixed test word is
    unseen, but both share the left context ``theo hướng``. After ``các`` the
    same stems are followed by a free-standing ``hoá``; right contexts are
    identical in both patterns. The test split always starts with
    ``xây_dựng nhà dân theo hướng kiên_cố_hoá để phòng_chống lụt_bão``.
    Returns ``(lexicon, train, test)``.
    """
    rng = np.random.default_rng(seed)
    syl = syllable_inventory(3 * n_stems + 120, seed + 2)
    stems = [tuple(syl[3 * k: 3 * k + (2 if k % 2 else 3)]) for k in range(n_stems)]
    stems.append(("kiên", "cố"))
    train_stems, test_stems = stems[: n_stems // 2], stems[n_stems // 2:]
    rest = syl[3 * n_stems:]
    nouns = [(rest[2 * k], rest[2 * k + 1]) for k in range(20)]
    singles = [(s,) for s in rest[40:100]]
    rare_endings = rest[100:120]
    fixed = [("xây", "dựng"), ("phòng", "chống"), ("lụt", "bão"), ("hiện", "đại"),
             ("cơ", "sở"), ("vật", "chất"), ("hoàn", "thành"), ("lớp", "học"),
             ("tạm", "bợ"), ("theo",), ("hướng",), ("nhà",), ("dân",), ("để",),
             ("các",), ("việc",), ("xoá",)]
    lexicon = Lexicon(stems + nouns + singles + fixed + [("hoá",)])

    def pick(seq):
        return seq[int(rng.integers(len(seq)))]

    def filler(k):
        return [pick(singles) if rng.random() < 0.6 else pick(nouns) for _ in range(k)]

    def sentence(stem_pool):
        words = filler(int(rng.integers(1, 4)))
        r = rng.random()
        if r < 0.45:
            words += [("theo",), ("hướng",), pick(stem_pool) + ("hoá",)]
        elif r < 0.9:
            words += [("các",), pick(stem_pool), ("hoá",)]
        else:
            # rare OOV 3-syllable words with other endings keep "hoá" above the mean
            words += [pick(nouns) + (pick(rare_endings),)]
        words += filler(int(rng.integers(1, 4)))
        return sentence_from_words(words)

    train = [sentence_from_words([("xây", "dựng"), ("cơ", "sở"), ("vật", "chất"), ("theo",),
                                  ("hướng",), ("hiện", "đại", "hoá"), ("hoàn", "thành"),
                                  ("việc",), ("xoá",), ("lớp", "học"), ("tạm", "bợ")])]
    train += [sentence(train_stems) for _ in range(n_train - 1)]
    test = [sentence_from_words([("xây", "dựng"), ("nhà",), ("dân",), ("theo",), ("hướng",),
                                 ("kiên", "cố", "hoá"), ("để",), ("phòng", "chống"),
                                 ("lụt", "bão")])]
    test += [sentence(test_stems) for _ in range(n_test - 1)]
    return lexicon, Corpus(tuple(train), "<suffix-train>"), Corpus(tuple(test), "<suffix-test>")
