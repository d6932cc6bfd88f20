"""Plain-text model files.

Layout::

    UITWS-MODEL v1
    key:value lines (hyper-parameters, feature groups, lexicon digest, counts)
    [sep_counts]     syllable<TAB>a<TAB>b<TAB>separable flag
    [suffix_counts]  syllable<TAB>count<TAB>suffix flag
    [lexicon]        one entry per line
    [family]         one syllable per line
    [middle]         one syllable per line
    [weights]        feature<TAB>weight, in vocabulary order
    [end]

The lexicon and name lists travel with the model so a model file alone is
enough to segment text.
"""

from __future__ import annotations

import warnings

import numpy as np

from . import __version__
from .exceptions import ModelVersion
from .features import FeatureConfig, FeatureVocabulary
from .resources import Lexicon, NameLists
from .segmenter import GapFeaturizer, WordSegmenter
from .stats import DerivedStats

MAGIC = "UITWS-MODEL v1"
FORMAT_VERSION = 1
_SECTIONS = ("sep_counts", "suffix_counts", "lexicon", "family", "middle", "weights")


def save_model(model: WordSegmenter, path) -> None:
    vocab = model.vocabulary_
    if len(vocab) == 0:
        raise ValueError("refusing to save a model with an empty vocabulary")
    stats = model.stats_
    lexicon = model.lexicon_
    names = model.name_lists_
    sections = {
        "sep_counts": [
            f"{s}\t{a}\t{b}\t{int(s in stats.separable)}"
            for s, (a, b) in sorted(stats.sep_counts.items())
        ],
        "suffix_counts": [
            f"{s}\t{c}\t{int(s in stats.suffixes)}"
            for s, c in sorted(stats.suffix_counts.items())
        ],
        "lexicon": [" ".join(e) for e in lexicon.entries()],
        "family": sorted(names.family_names),
        "middle": sorted(names.middle_names),
        "weights": [f"{f}\t{w:.17g}" for f, w in zip(vocab.features, model.coef_)],
    }
    header = {
        "format_version": FORMAT_VERSION,
        "toolkit_version": __version__,
        "C": repr(float(model.C)),
        "loss": model.loss,
        "tol": repr(float(model.tol)),
        "max_iter": int(model.max_iter),
        "random_state": model.random_state,
        "features": str(model.config_),
        "lexicon_id": lexicon.digest(),
    }
    for name in _SECTIONS:
        header[f"n_{name}"] = len(sections[name])
    lines = [MAGIC]
    lines += [f"{k}:{v}" for k, v in header.items()]
    for name in _SECTIONS:
        lines.append(f"[{name}]")
        lines += sections[name]
    lines.append("[end]")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse(text: str):
    lines = text.split("\n")
    if not lines or lines[0] != MAGIC:
        raise ModelVersion(f"not a {MAGIC} file")
    header = {}
    k = 1
    while k < len(lines) and not lines[k].startswith("["):
        key, sep, value = lines[k].partition(":")
        if not sep:
            raise ModelVersion(f"bad header line {k + 1}: {lines[k]!r}")
        header[key] = value
        k += 1
    if header.get("format_version") != str(FORMAT_VERSION):
        raise ModelVersion(f"unsupported model format {header.get('format_version')!r}")
    sections = {}
    for name in _SECTIONS:
        if k >= len(lines) or lines[k] != f"[{name}]":
            raise ModelVersion(f"missing section [{name}]")
        try:
            count = int(header[f"n_{name}"])
        except (KeyError, ValueError):
            raise ModelVersion(f"missing count for section [{name}]") from None
        body = lines[k + 1 : k + 1 + count]
        if len(body) != count or any(line.startswith("[") for line in body):
            raise ModelVersion(f"section [{name}] is truncated")
        sections[name] = body
        k += 1 + count
    if k >= len(lines) or lines[k] != "[end]":
        raise ModelVersion("model file is truncated")
    return header, sections


def load_model(path, lexicon: Lexicon | None = None,
               name_lists: NameLists | None = None) -> WordSegmenter:
    """Read a model file.

    A ``lexicon`` passed here replaces the stored one; a warning is issued
    when its digest differs from the one the model was trained with.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as exc:
        raise ModelVersion(f"{path}: not UTF-8 text") from exc
    header, sec = _parse(text)
    try:
        sep_counts, separable = {}, set()
        for line in sec["sep_counts"]:
            s, a, b, flag = line.split("\t")
            sep_counts[s] = (int(a), int(b))
            if flag == "1":
                separable.add(s)
        suffix_counts, suffixes = {}, set()
        for line in sec["suffix_counts"]:
            s, c, flag = line.split("\t")
            suffix_counts[s] = int(c)
            if flag == "1":
                suffixes.add(s)
        features, weights = [], []
        for line in sec["weights"]:
            feat, w = line.rsplit("\t", 1)
            features.append(feat)
            weights.append(float(w))
        stored_lexicon = Lexicon(line.split(" ") for line in sec["lexicon"])
        stored_names = NameLists(frozenset(sec["family"]), frozenset(sec["middle"]))
        config = FeatureConfig.from_groups(header["features"])
        params = dict(
            C=float(header["C"]), loss=header["loss"], tol=float(header["tol"]),
            max_iter=int(header["max_iter"]),
            random_state=None if header["random_state"] == "None" else int(header["random_state"]),
        )
    except (KeyError, ValueError) as exc:
        raise ModelVersion(f"{path}: corrupt model file ({exc})") from None
    if stored_lexicon.digest() != header.get("lexicon_id"):
        raise ModelVersion(f"{path}: stored lexicon does not match its digest")
    if len(set(features)) != len(features):
        raise ModelVersion(f"{path}: duplicate feature names")

    if lexicon is not None and lexicon.digest() != header["lexicon_id"]:
        warnings.warn("supplied lexicon differs from the one the model was trained with",
                      UserWarning, stacklevel=2)
    lexicon = stored_lexicon if lexicon is None else lexicon
    name_lists = stored_names if name_lists is None else name_lists

    featurizer = GapFeaturizer(lexicon, name_lists, config)
    featurizer.lexicon_ = lexicon
    featurizer.name_lists_ = name_lists
    featurizer.config_ = config
    featurizer.stats_ = DerivedStats(frozenset(separable), frozenset(suffixes),
                                     sep_counts, suffix_counts)
    featurizer.vocabulary_ = FeatureVocabulary(features, frozen=True)

    model = WordSegmenter(lexicon, name_lists, config, **params)
    model.featurizer_ = featurizer
    model.coef_ = np.asarray(weights, dtype=np.float64)
    model.n_iter_ = None
    return model
