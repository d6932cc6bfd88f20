"""Estimators: gap featurization and greedy left-to-right segmentation."""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, TextIO

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .corpus import Label, Sentence, parse_raw_sentence, render_segmentation
from .exceptions import SegmentationError
from .features import (
    BIAS,
    FeatureConfig,
    FeatureVocabulary,
    GapContext,
    _Window,
    extract_all,
    sentence_contexts,
)
from .resources import Lexicon, NameLists
from .stats import derive_stats
from .svm import LinearSVM
from .validation import check_corpus, check_lexicon, check_name_lists, check_sentences


def _config(features) -> FeatureConfig:
    if isinstance(features, FeatureConfig):
        return features
    return FeatureConfig.from_groups(features)


def gap_targets(X) -> np.ndarray:
    """+1 for UNDERSCORE and -1 for SPACE, over all gaps in order."""
    sentences = check_sentences(X, labeled=True)
    return np.array(
        [lab.sign for s in sentences for lab in s.gap_labels], dtype=np.int64
    )


class GapFeaturizer(TransformerMixin, BaseEstimator):
    """Turn labeled sentences into one sparse row per gap.

    ``fit`` derives separable syllables and suffixes from the training
    sentences and builds the feature vocabulary. ``transform`` extracts
    features with the gold previous labels (teacher forcing).
    """

    def __init__(self, lexicon=None, name_lists=None, features="base,long,sep,sfx"):
        self.lexicon = lexicon
        self.name_lists = name_lists
        self.features = features

    def _resolve(self):
        self.lexicon_ = check_lexicon(self.lexicon)
        self.name_lists_ = check_name_lists(self.name_lists)
        self.config_ = _config(self.features)

    def fit(self, X, y=None):
        self.fit_transform(X)
        return self

    def fit_transform(self, X, y=None):
        self._resolve()
        corpus = check_corpus(X, labeled=True)
        self.stats_ = derive_stats(corpus, self.lexicon_)
        self.vocabulary_ = FeatureVocabulary()
        self.vocabulary_.add(BIAS)
        matrix = self._matrix(corpus)
        self.vocabulary_.freeze()
        return matrix

    def transform(self, X):
        check_is_fitted(self, "vocabulary_")
        return self._matrix(check_sentences(X, labeled=True))

    def _matrix(self, sentences: Iterable[Sentence]) -> sp.csr_matrix:
        vocab = self.vocabulary_
        indptr = [0]
        indices: list[int] = []
        data: list[float] = []
        for sent in sentences:
            for ctx in sentence_contexts(sent, self.lexicon_, sent.gap_labels):
                row = {}
                for feat, count in self.extract(ctx).items():
                    idx = vocab.add(feat)
                    if idx is not None:
                        row[idx] = count
                for idx in sorted(row):
                    indices.append(idx)
                    data.append(row[idx])
                indptr.append(len(indices))
        return sp.csr_matrix(
            (np.asarray(data, dtype=np.float64), np.asarray(indices, dtype=np.int64),
             np.asarray(indptr, dtype=np.int64)),
            shape=(len(indptr) - 1, len(vocab)),
        )

    def extract(self, ctx: GapContext):
        return extract_all(ctx, self.config_, self.lexicon_, self.name_lists_, self.stats_)


class WordSegmenter(BaseEstimator):
    """Word segmenter labeling each syllable gap with a linear SVM.

    Parameters
    ----------
    lexicon : Lexicon, path or iterable of words, optional
        Word list used by the dictionary features and by suffix statistics.
    name_lists : NameLists or (family, middle) pair, optional
    features : str or FeatureConfig
        Comma list drawn from ``base``, ``long``, ``sep`` and ``sfx``.
    C : float
        SVM penalty.
    loss : {"hinge", "squared_hinge"}
    tol, max_iter : stopping rule of the dual solver.
    random_state : int
        Seeds the solver's per-epoch permutation.

    ``fit`` takes segmented sentences (``"hiện_đại_hoá đất_nước"`` lines or
    labeled :class:`Sentence` objects). ``predict`` returns gap labels,
    ``segment`` rendered lines, ``score`` the word-level F1 against gold.
    """

    def __init__(self, lexicon=None, name_lists=None, features="base,long,sep,sfx",
                 C=1.0, loss="hinge", tol=1e-3, max_iter=1000, random_state=42):
        self.lexicon = lexicon
        self.name_lists = name_lists
        self.features = features
        self.C = C
        self.loss = loss
        self.tol = tol
        self.max_iter = max_iter
        self.random_state = random_state

    def fit(self, X, y=None):
        featurizer = GapFeaturizer(self.lexicon, self.name_lists, self.features)
        corpus = check_corpus(X, labeled=True)
        matrix = featurizer.fit_transform(corpus)
        targets = gap_targets(corpus)
        svm = LinearSVM(C=self.C, loss=self.loss, tol=self.tol,
                        max_iter=self.max_iter, random_state=self.random_state)
        svm.fit(matrix, targets)
        self.featurizer_ = featurizer
        self.coef_ = svm.coef_
        self.n_iter_ = svm.n_iter_
        return self

    # fitted state, exposed for model files and inspection
    @property
    def vocabulary_(self) -> FeatureVocabulary:
        return self.featurizer_.vocabulary_

    @property
    def stats_(self):
        return self.featurizer_.stats_

    @property
    def config_(self) -> FeatureConfig:
        return self.featurizer_.config_

    @property
    def lexicon_(self) -> Lexicon:
        return self.featurizer_.lexicon_

    @property
    def name_lists_(self) -> NameLists:
        return self.featurizer_.name_lists_

    def predict(self, X) -> list[tuple[Label, ...]]:
        check_is_fitted(self, "coef_")
        return [segment_sentence(self, s) for s in check_sentences(X)]

    def segment(self, X) -> list[str]:
        sentences = check_sentences(X)
        return [render_segmentation(s, segment_sentence(self, s)) for s in sentences]

    def score(self, X, y=None) -> float:
        from .evaluation import score

        gold = check_sentences(X, labeled=True)
        pred = [s.with_labels(lab) for s, lab in zip(gold, self.predict(gold))]
        return score(gold, pred).f1


def _gap_score(weights, index, feats) -> float:
    total = 0.0
    for feat, count in feats.items():
        j = index.get(feat)
        if j is not None:
            total += weights[j] * count
    return total


def segment_sentence(model: WordSegmenter, syllables, lexicon: Lexicon | None = None,
                     name_lists: NameLists | None = None) -> tuple[Label, ...]:
    """Greedy left-to-right decoding; each gap sees the labels predicted so far.

    ``syllables`` is a :class:`Sentence` or a list of surface syllables.
    ``lexicon`` and ``name_lists`` default to the ones stored in the model.
    """
    sent = syllables if isinstance(syllables, Sentence) else Sentence.from_syllables(syllables)
    lexicon = model.lexicon_ if lexicon is None else lexicon
    name_lists = model.name_lists_ if name_lists is None else name_lists
    config, stats = model.config_, model.stats_
    weights, index = model.coef_, model.vocabulary_.index
    win = _Window(sent, lexicon)
    labels: list[Label] = []
    for i in range(len(sent) - 1):
        ctx = GapContext(sent, i, labels, lexicon, win)
        feats = extract_all(ctx, config, lexicon, name_lists, stats)
        labels.append(Label.UNDERSCORE if _gap_score(weights, index, feats) > 0
                      else Label.SPACE)
    return tuple(labels)


_WORKER_MODEL = None


def _init_worker(model):
    global _WORKER_MODEL
    _WORKER_MODEL = model


def _segment_line(line: str, model=None) -> tuple[str, str | None]:
    model = _WORKER_MODEL if model is None else model
    text = line.rstrip("\r\n")
    if not text.strip():
        return "", None
    try:
        sent = parse_raw_sentence(text)
        return render_segmentation(sent, segment_sentence(model, sent)), None
    except (SegmentationError, ValueError) as exc:
        return text, str(exc)


def segment_stream(model: WordSegmenter, lines: Iterable[str], out: TextIO,
                   workers: int = 1, strict: bool = False,
                   diagnostics: TextIO | None = None) -> tuple[int, int]:
    """Segment ``lines`` into ``out``, one output line per input line, in order.

    Malformed lines are echoed unchanged and reported on ``diagnostics``;
    with ``strict`` the first one raises instead. Returns
    ``(lines written, lines flagged)``.
    """
    diagnostics = sys.stderr if diagnostics is None else diagnostics
    written = flagged = 0

    def consume(results: Iterable[tuple[str, str | None]]):
        nonlocal written, flagged
        for lineno, (text, err) in enumerate(results, 1):
            if err is not None:
                if strict:
                    raise SegmentationError(f"line {lineno}: {err}")
                flagged += 1
                diagnostics.write(f"line {lineno}: {err}; echoed unsegmented\n")
            out.write(text + "\n")
            written += 1

    if workers <= 1:
        consume(_segment_line(line, model) for line in lines)
    else:
        with ProcessPoolExecutor(workers, initializer=_init_worker,
                                 initargs=(model,)) as pool:
            consume(pool.map(_segment_line, lines, chunksize=64))
    return written, flagged
