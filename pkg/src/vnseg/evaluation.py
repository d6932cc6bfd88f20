"""Word-level scoring, per-length analysis, cross-validation and ablation."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence

from joblib import Parallel, delayed
from sklearn.base import clone

from .corpus import Corpus, Label, split_folds
from .exceptions import AlignmentError, LabelArity, SegmentationError
from .features import FeatureConfig
from .resources import Lexicon, in_dict
from .validation import check_corpus, check_sentences

DEFAULT_C_GRID = (0.001, 0.01, 0.1, 1.0, 10.0, 100.0)
LENGTH_BUCKETS = ("1", "2", "3a", "3b", "4a", "4b", "5-9", ">9")
ABLATION_CONFIGS = (
    "base",
    "base,long",
    "base,sep",
    "base,sfx",
    "base,long,sep",
    "base,long,sfx",
    "base,sep,sfx",
    "base,long,sep,sfx",
)


@dataclass(frozen=True)
class Metrics:
    gold_words: int
    pred_words: int
    correct_words: int

    @property
    def precision(self) -> float:
        return self.correct_words / self.pred_words if self.pred_words else 0.0

    @property
    def recall(self) -> float:
        return self.correct_words / self.gold_words if self.gold_words else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r > 0 else 0.0

    def __add__(self, other: "Metrics") -> "Metrics":
        return Metrics(self.gold_words + other.gold_words,
                       self.pred_words + other.pred_words,
                       self.correct_words + other.correct_words)


def spans_from_labels(labels: Sequence[Label], n_syllables: int) -> set[tuple[int, int]]:
    """Inclusive ``(start, end)`` spans of the words described by gap labels."""
    if len(labels) != n_syllables - 1:
        raise LabelArity(f"{n_syllables} syllables need {n_syllables - 1} labels")
    spans = set()
    start = 0
    for i, lab in enumerate(labels):
        if lab == Label.SPACE:
            spans.add((start, i))
            start = i + 1
    spans.add((start, n_syllables - 1))
    return spans


def _aligned(gold, pred):
    gold = check_sentences(gold, labeled=True)
    pred = check_sentences(pred, labeled=True)
    if len(gold) != len(pred):
        raise AlignmentError(f"{len(gold)} gold vs {len(pred)} predicted sentences")
    for k, (g, p) in enumerate(zip(gold, pred)):
        if g.raw_syllables != p.raw_syllables:
            raise AlignmentError(f"sentence {k + 1}: syllables differ")
    return gold, pred


def score(gold, pred) -> Metrics:
    """Micro-averaged word P/R/F1 over all sentences."""
    gold, pred = _aligned(gold, pred)
    total = Metrics(0, 0, 0)
    for g, p in zip(gold, pred):
        gs = spans_from_labels(g.gap_labels, len(g))
        ps = spans_from_labels(p.gap_labels, len(p))
        total += Metrics(len(gs), len(ps), len(gs & ps))
    return total


def word_bucket(norm_syllables: Sequence[str], lexicon: Lexicon, suffixes) -> str:
    n = len(norm_syllables)
    if n in (3, 4):
        oov_suffixed = norm_syllables[-1] in suffixes and not in_dict(lexicon, norm_syllables)
        return f"{n}{'b' if oov_suffixed else 'a'}"
    if n <= 2:
        return str(n)
    return "5-9" if n <= 9 else ">9"


def score_by_length(gold, pred, lexicon: Lexicon, suffixes) -> dict[str, Metrics]:
    """Metrics per word-length bucket.

    Gold words are bucketed for recall, predicted words for precision; a
    word that is both gold and predicted lands in the same bucket on both
    sides, so bucket counts add up to the totals of :func:`score`.
    """
    gold, pred = _aligned(gold, pred)
    counts = {b: [0, 0, 0] for b in LENGTH_BUCKETS}
    for g, p in zip(gold, pred):
        gs = spans_from_labels(g.gap_labels, len(g))
        ps = spans_from_labels(p.gap_labels, len(p))
        f = g.norm_syllables
        for start, end in gs:
            b = word_bucket(f[start:end + 1], lexicon, suffixes)
            counts[b][0] += 1
            if (start, end) in ps:
                counts[b][2] += 1
        for start, end in ps:
            counts[word_bucket(f[start:end + 1], lexicon, suffixes)][1] += 1
    return {b: Metrics(*c) for b, c in counts.items()}


@dataclass
class CVResult:
    folds: list  # Metrics, or None for a failed fold
    errors: list = field(default_factory=list)  # (fold, message)

    @property
    def mean_f1(self) -> float:
        scores = [m.f1 for m in self.folds if m is not None]
        return sum(scores) / len(scores) if scores else math.nan

    @property
    def mean_precision(self) -> float:
        scores = [m.precision for m in self.folds if m is not None]
        return sum(scores) / len(scores) if scores else math.nan

    @property
    def mean_recall(self) -> float:
        scores = [m.recall for m in self.folds if m is not None]
        return sum(scores) / len(scores) if scores else math.nan


def _run_fold(estimator, train: Corpus, test: Corpus):
    try:
        model = clone(estimator).fit(train)
        pred = [s.with_labels(lab) for s, lab in zip(test, model.predict(test))]
        return score(test, pred), None
    except (SegmentationError, ValueError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def cross_validate(estimator, corpus, k: int = 5, seed: int = 42, n_jobs: int = 1) -> CVResult:
    """k-fold CV; each fold fits a clone of ``estimator`` on its train split only."""
    corpus = check_corpus(corpus, labeled=True)
    folds = split_folds(corpus, k, seed)
    results = Parallel(n_jobs=n_jobs)(
        delayed(_run_fold)(estimator, train, test) for train, test in folds
    )
    out = CVResult([m for m, _ in results])
    out.errors = [(i, err) for i, (_, err) in enumerate(results) if err is not None]
    return out


@dataclass
class GridResult:
    best_C: float
    best_f1: float
    table: list  # (C, CVResult)


def grid_search(estimator, corpus, C_grid=DEFAULT_C_GRID, k: int = 5, seed: int = 42,
                n_jobs: int = 1) -> GridResult:
    """Pick the C with the highest mean CV F1; ties go to the smaller C."""
    table = []
    best_C, best_f1 = None, -math.inf
    for C in sorted(C_grid):
        result = cross_validate(clone(estimator).set_params(C=C), corpus, k, seed, n_jobs)
        table.append((C, result))
        f1 = result.mean_f1
        if not math.isnan(f1) and f1 > best_f1:
            best_C, best_f1 = C, f1
    if best_C is None:
        best_f1 = math.nan
    return GridResult(best_C, best_f1, table)


def ablation(estimator, corpus, C_grid=DEFAULT_C_GRID, k: int = 5, seed: int = 42,
             n_jobs: int = 1) -> list[tuple[str, float, float]]:
    """Grid-searched CV F1 for every feature combination that includes ``base``.

    Returns ``(features, best C, mean F1)`` rows.
    """
    rows = []
    for groups in ABLATION_CONFIGS:
        est = clone(estimator).set_params(features=FeatureConfig.from_groups(groups))
        result = grid_search(est, corpus, C_grid, k, seed, n_jobs)
        rows.append((groups.replace(",", " + "), result.best_C, result.best_f1))
    return rows


def _cell(value) -> str:
    if isinstance(value, float):
        return "nan" if math.isnan(value) else f"{value:.4f}"
    return "" if value is None else str(value)


def format_table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(headers)] + [[_cell(v) for v in row] for row in rows]
    widths = [max(len(r[c]) for r in cells) for c in range(len(headers))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def format_csv(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def percent(x: float) -> float:
    return 100.0 * x
