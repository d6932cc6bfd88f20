import random

import pytest

from conftest import corpus_of
from vnseg.corpus import Corpus, parse_raw_sentence
from vnseg.exceptions import NeedsLabels
from vnseg.resources import Lexicon
from vnseg.stats import (
    compute_separable,
    compute_suffixes,
    derive_stats,
    length_bucket,
    word_length_distribution,
)


def test_single_candidate_never_beats_its_own_mean():
    lines = ["những x_y"] * 10 + ["những_y z_w"]
    separable, counts = compute_separable(corpus_of(*lines))
    assert counts["những"] == (10, 1)
    assert [s for s, (a, b) in counts.items() if a > b] == ["những"]
    assert "những" not in separable


def test_separable_strict_mean():
    lines = ["những a"] * 10 + ["các b"] * 2 + ["văn_học c"] * 20 + ["văn d"]
    separable, counts = compute_separable(corpus_of(*lines))
    # candidates (a > b): những 10, a 10, các 2, b 2, c 20, d 1; mean 7.5
    assert counts["văn"] == (1, 20)
    assert "văn" not in separable
    assert "những" in separable
    assert "các" not in separable


def test_separable_counts_every_word_token():
    # word-initial counts include every multi-syllable word, wherever it sits
    separable, counts = compute_separable(corpus_of("x_y x", "a x_y_z"))
    assert counts["x"] == (1, 2)
    assert counts["a"] == (1, 0)


def test_suffix_example():
    lines = ["hiện_đại_hoá a"] * 6 + ["xanh_lè_lè b"]
    suffixes, counts = compute_suffixes(corpus_of(*lines), Lexicon())
    assert counts == {"hoá": 6, "lè": 1}
    assert suffixes == {"hoá"}


def test_suffix_skips_lexicon_words_and_non_lower():
    lex = Lexicon([["hiện", "đại", "hoá"]])
    lines = ["hiện_đại_hoá", "công_nghiệp_hoá", "Liên_Hợp_Quốc", "a_b", "a_b_c_d_e"]
    suffixes, counts = compute_suffixes(corpus_of(*lines), lex)
    assert counts == {"hoá": 1}


def test_suffix_normalizes_tone_placement():
    lines = ["a_b_hóa", "c_d_hoá", "e_f_g"]
    _, counts = compute_suffixes(corpus_of(*lines), Lexicon())
    assert counts == {"hoá": 2, "g": 1}


def test_stats_need_labels():
    with pytest.raises(NeedsLabels):
        derive_stats(Corpus((parse_raw_sentence("a b"),)), Lexicon())


def test_empty_candidate_pools():
    stats = derive_stats(corpus_of("a_b"), Lexicon())
    assert stats.separable == frozenset() and stats.suffixes == frozenset()


def test_order_invariance():
    rng = random.Random(0)
    lines = ["những a_b", "các c", "những d", "x_y_hoá e", "p_q_hoá", "m_n_lè"] * 3
    base = derive_stats(corpus_of(*lines), Lexicon())
    rng.shuffle(lines)
    other = derive_stats(corpus_of(*lines), Lexicon())
    assert base == other


@pytest.mark.parametrize("n,bucket", [(1, "1"), (2, "2"), (4, "4"), (5, "5-9"),
                                      (9, "5-9"), (10, ">9")])
def test_length_bucket(n, bucket):
    assert length_bucket(n) == bucket


def test_distribution_counts_unique_words():
    dist = word_length_distribution(corpus_of("a b_c", "a b_c d_e_f", "A"))
    # unique words: a, b c, d e f
    assert dist["1"] == pytest.approx(100 / 3)
    assert dist["2"] == pytest.approx(100 / 3)
    assert dist["3"] == pytest.approx(100 / 3)
    assert sum(dist.values()) == pytest.approx(100)
