import io
import pickle
import warnings

import numpy as np
import pytest
from sklearn.base import clone

from conftest import corpus_of
from vnseg.corpus import Label, parse_raw_sentence, parse_underscore_sentence
from vnseg.exceptions import NeedsLabels, SegmentationError
from vnseg.features import BIAS, FeatureConfig, GapContext, extract_all
from vnseg.resources import Lexicon
from vnseg.segmenter import (
    GapFeaturizer,
    WordSegmenter,
    gap_targets,
    segment_sentence,
    segment_stream,
)
from vnseg.stats import DerivedStats

U, S = Label.UNDERSCORE, Label.SPACE


def test_gap_targets():
    assert gap_targets(["a_b c", "d"]).tolist() == [1, -1]


def test_featurizer_rows_and_bias():
    feat = GapFeaturizer(features="base")
    X = feat.fit_transform(["a_b c", "d e_f g"])
    assert X.shape[0] == 5
    assert feat.vocabulary_.features[0] == BIAS
    assert np.all(X[:, 0].toarray() == 1)
    assert feat.vocabulary_.frozen
    before = len(feat.vocabulary_)
    assert feat.transform(["x_y z"]).shape == (2, before)
    assert len(feat.vocabulary_) == before


def test_featurizer_teacher_forcing():
    lex = Lexicon([["b", "c"], ["a", "b", "c"]])
    lines = ["a_b_c d", "b_c a", "những a_b c", "những x"]
    feat = GapFeaturizer(lexicon=lex, features="base,sep,sfx")
    X = feat.fit_transform(lines).toarray()
    names = feat.vocabulary_.features
    row = 0
    for line in lines:
        sent = parse_underscore_sentence(line)
        for i in range(len(sent) - 1):
            ctx = GapContext(sent, i, list(sent.gap_labels[:i]), lex)
            want = extract_all(ctx, feat.config_, lex, feat.name_lists_, feat.stats_)
            got = {names[k]: X[row, k] for k in np.flatnonzero(X[row])}
            assert got == dict(want)
            row += 1


def test_featurizer_needs_labels():
    with pytest.raises(NeedsLabels):
        GapFeaturizer().fit_transform([parse_raw_sentence("a b")])


def test_fit_learns_lexicon_words(small_language):
    lexicon, train, test = small_language
    model = WordSegmenter(lexicon=lexicon, features="base").fit(train)
    assert model.score(test) > 0.95
    assert model.n_iter_ >= 1
    assert len(model.coef_) == len(model.vocabulary_)


def test_predict_and_segment(fitted, small_language):
    _, _, test = small_language
    gold = test[0]
    raw = " ".join(gold.raw_syllables)
    labels = fitted.predict([raw])[0]
    assert len(labels) == len(gold) - 1
    assert fitted.segment([raw])[0].replace("_", " ") == raw


def test_greedy_decoder_uses_predicted_labels(fitted, small_language):
    _, _, test = small_language
    sent = test[1]
    labels = segment_sentence(fitted, sent)
    w, index = fitted.coef_, fitted.vocabulary_.index
    for i in range(len(sent) - 1):
        ctx = GapContext(sent, i, list(labels[:i]), fitted.lexicon_)
        feats = extract_all(ctx, fitted.config_, fitted.lexicon_, fitted.name_lists_,
                            fitted.stats_)
        score = sum(w[index[f]] * c for f, c in feats.items() if f in index)
        assert labels[i] == (U if score > 0 else S)


def test_left_to_right_dependency():
    # "ta" is separable: after a SPACE it fires A1 features, after an UNDERSCORE it does not
    lex = Lexicon([["ta", "lo"]])
    feat = GapFeaturizer(lexicon=lex, features="sep")
    feat.fit_transform(["ta lo"] * 5 + ["mu ta_lo"])
    sent = parse_raw_sentence("mu ta lo")
    after_space = feat.extract(GapContext(sent, 1, [S], lex))
    after_under = feat.extract(GapContext(sent, 1, [U], lex))
    assert any(f.startswith("A1:") for f in after_space)
    assert not any(f.startswith("A1:") for f in after_under)


def test_single_syllable_sentence(fitted):
    assert fitted.predict([["xin"]]) == [()]
    assert fitted.segment(["xin"]) == ["xin"]


def test_sklearn_params_and_clone(small_language):
    lexicon, train, _ = small_language
    est = WordSegmenter(lexicon=lexicon, C=0.5, features=FeatureConfig.from_groups("base,sep"))
    params = est.get_params()
    assert params["C"] == 0.5 and params["random_state"] == 42
    copy = clone(est)
    assert copy.get_params()["lexicon"].contains(lexicon.entries()[-1])


def test_clone_keeps_dictionary_signal(small_language):
    lexicon, train, test = small_language
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        direct = WordSegmenter(lexicon=lexicon).fit(train).score(test)
        cloned = clone(WordSegmenter(lexicon=lexicon)).fit(train).score(test)
    assert direct == cloned


def test_fit_is_deterministic(small_language):
    lexicon, train, _ = small_language
    a = WordSegmenter(lexicon=lexicon, features="base").fit(train)
    b = WordSegmenter(lexicon=lexicon, features="base").fit(train)
    assert np.array_equal(a.coef_, b.coef_)
    assert a.vocabulary_ == b.vocabulary_


def test_model_pickles(fitted):
    other = pickle.loads(pickle.dumps(fitted))
    assert other.segment(["a b c"]) == fitted.segment(["a b c"])


def test_segment_sentence_lexicon_override(fitted):
    sent = ["a", "b"]
    assert len(segment_sentence(fitted, sent, lexicon=Lexicon())) == 1


def test_stream_echoes_malformed_lines(fitted):
    out, diag = io.StringIO(), io.StringIO()
    written, flagged = segment_stream(fitted, ["a b", "", "x_y z", "c"], out, diagnostics=diag)
    lines = out.getvalue().split("\n")
    assert written == 4 and flagged == 1
    assert lines[1] == "" and lines[2] == "x_y z"
    assert "line 3" in diag.getvalue()


def test_stream_strict(fitted):
    with pytest.raises(SegmentationError, match="line 2"):
        segment_stream(fitted, ["a b", "x_y"], io.StringIO(), strict=True)


def test_stream_order_with_workers(fitted, small_language):
    _, _, test = small_language
    lines = [" ".join(s.raw_syllables) for s in test] * 12
    one, eight = io.StringIO(), io.StringIO()
    segment_stream(fitted, lines, one, workers=1)
    segment_stream(fitted, lines, eight, workers=8)
    assert one.getvalue() == eight.getvalue()
    assert one.getvalue().count("\n") == len(lines)


def test_unfitted_predict():
    from sklearn.exceptions import NotFittedError

    with pytest.raises(NotFittedError):
        WordSegmenter().predict(["a b"])


def test_stats_come_from_training_data_only():
    model = WordSegmenter(features="base,sep").fit(
        corpus_of(*(["những a_b"] * 6 + ["c_d e"] * 3)))
    assert model.stats_.separable <= {"những", "e"}
    assert isinstance(model.stats_, DerivedStats)


def test_parse_strings_as_gold():
    model = WordSegmenter(features="base").fit(["a_b c", "c a_b", "a_b a_b c"])
    assert model.segment(["a b c"]) == ["a_b c"]
    assert model.predict([parse_underscore_sentence("a_b")]) == [(U,)]
