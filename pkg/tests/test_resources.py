import copy
import pickle

import pytest

from vnseg.exceptions import MalformedEntry, ResourceIO
from vnseg.resources import (
    BOS,
    EOS,
    Lexicon,
    NameLists,
    in_dict,
    is_family_name,
    is_middle_name,
    load_lexicon,
    load_name_lists,
)


def test_whole_entries_only():
    lex = Lexicon([["hình", "phạt"], ["loại"]])
    assert lex.contains(["hình", "phạt"])
    assert not lex.contains(["hình"])
    assert not lex.contains(["hình", "phạt", "nặng"])
    assert ("loại",) in lex


def test_entries_are_normalized():
    lex = Lexicon([["Hiện", "Đại", "Hóa"]])
    assert lex.contains(["hiện", "đại", "hoá"])
    assert lex.entries() == [("hiện", "đại", "hoá")]


def test_size_and_max_len():
    lex = Lexicon([["a"], ["a", "b"], ["a"], ["c", "d", "e"]])
    assert len(lex) == 3 and lex.max_len == 3


def test_empty_lexicon():
    lex = Lexicon()
    assert not lex.contains(["a"]) and not lex.contains([])


def test_sentinels_never_members():
    lex = Lexicon([["a", "b"]])
    assert not in_dict(lex, [BOS, "a"])
    assert not in_dict(lex, ["b", EOS])
    assert in_dict(lex, ["a", "b"])


def test_survives_deepcopy_and_pickle():
    # sklearn.clone deep-copies estimator params; membership must survive
    lex = Lexicon([["hình", "phạt"], ["loại", "hình"]])
    for other in (copy.deepcopy(lex), pickle.loads(pickle.dumps(lex))):
        assert other.contains(["hình", "phạt"])
        assert other == lex
        assert other.digest() == lex.digest()


def test_digest_order_independent():
    a = Lexicon([["x", "y"], ["z"]])
    b = Lexicon([["z"], ["x", "y"]])
    c = Lexicon([["z"]])
    assert a.digest() == b.digest() != c.digest()


def test_load_lexicon(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text("hình phạt\n\n  loại  hình \n", encoding="utf-8")
    lex = load_lexicon(p)
    assert lex.entries() == [("hình", "phạt"), ("loại", "hình")]


def test_load_lexicon_rejects_underscore(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text("hình_phạt\n", encoding="utf-8")
    with pytest.raises(MalformedEntry, match=":1:"):
        load_lexicon(p)


def test_load_lexicon_missing(tmp_path):
    with pytest.raises(ResourceIO):
        load_lexicon(tmp_path / "nope.txt")
    with pytest.raises(OSError):
        load_lexicon(tmp_path / "nope.txt")


def test_name_lists(tmp_path):
    fam = tmp_path / "f.txt"
    mid = tmp_path / "m.txt"
    fam.write_text("Nguyễn\nTrần\n", encoding="utf-8")
    mid.write_text("Văn\nThị\n", encoding="utf-8")
    names = load_name_lists(fam, mid)
    assert is_family_name(names, "nguyễn") and not is_family_name(names, "văn")
    assert is_middle_name(names, "thị")
    assert load_name_lists() == NameLists()
