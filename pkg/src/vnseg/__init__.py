"""Vietnamese word segmentation with a linear SVM over syllable-gap features."""

__version__ = "0.1.0"

from .corpus import (  # noqa: E402
    Corpus,
    Label,
    Sentence,
    SyllableType,
    classify_syllable_type,
    normalize_syllable,
    parse_underscore_sentence,
    read_corpus,
    render_segmentation,
    split_folds,
)
from .features import FeatureConfig, FeatureVocabulary, GapContext, extract_all  # noqa: E402
from .resources import Lexicon, NameLists, load_lexicon, load_name_lists  # noqa: E402
from .segmenter import GapFeaturizer, WordSegmenter, segment_sentence  # noqa: E402
from .stats import DerivedStats, derive_stats  # noqa: E402
from .svm import LinearSVM  # noqa: E402
from .model_io import load_model, save_model  # noqa: E402

__all__ = [
    "Corpus",
    "DerivedStats",
    "FeatureConfig",
    "FeatureVocabulary",
    "GapContext",
    "GapFeaturizer",
    "Label",
    "Lexicon",
    "LinearSVM",
    "NameLists",
    "Sentence",
    "SyllableType",
    "WordSegmenter",
    "classify_syllable_type",
    "derive_stats",
    "extract_all",
    "load_lexicon",
    "load_model",
    "load_name_lists",
    "normalize_syllable",
    "parse_underscore_sentence",
    "read_corpus",
    "render_segmentation",
    "save_model",
    "segment_sentence",
    "split_folds",
]
