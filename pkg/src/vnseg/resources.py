"""Word lexicon and person-name lists."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import normalize_syllable
from .exceptions import MalformedEntry, ResourceIO

# Out-of-range positions in feature windows; never lexicon members.
BOS = "<s>"
EOS = "</s>"
SENTINELS = frozenset({BOS, EOS})

# syllables are never empty, so "" marks the end of an entry and survives copying
_END = ""


class Lexicon:
    """Trie over normalized syllable sequences.

    Only whole entries are members: after inserting ``hình phạt``,
    ``contains(["hình"])`` is false.
    """

    def __init__(self, entries: Iterable[Sequence[str]] = ()):
        self._root: dict = {}
        self.size = 0
        self.max_len = 0
        for entry in entries:
            self._insert([normalize_syllable(s) for s in entry])

    def _insert(self, syllables: list[str]) -> None:
        if not syllables:
            return
        node = self._root
        for s in syllables:
            node = node.setdefault(s, {})
        if _END not in node:
            node[_END] = True
            self.size += 1
            self.max_len = max(self.max_len, len(syllables))

    def contains(self, syllables: Sequence[str]) -> bool:
        if not syllables or len(syllables) > self.max_len:
            return False
        node = self._root
        for s in syllables:
            node = node.get(s)
            if node is None:
                return False
        return _END in node

    __contains__ = contains

    def __len__(self) -> int:
        return self.size

    def entries(self) -> list[tuple[str, ...]]:
        """All entries, sorted."""
        out = []
        stack = [((), self._root)]
        while stack:
            prefix, node = stack.pop()
            for key, child in node.items():
                if key == _END:
                    out.append(prefix)
                else:
                    stack.append((prefix + (key,), child))
        return sorted(out)

    def digest(self) -> str:
        """Order-independent content digest, stored in model files."""
        h = hashlib.sha256()
        for entry in self.entries():
            h.update(" ".join(entry).encode("utf-8"))
            h.update(b"\n")
        return h.hexdigest()

    def __eq__(self, other) -> bool:
        return isinstance(other, Lexicon) and self.entries() == other.entries()

    def __repr__(self) -> str:
        return f"Lexicon(size={self.size}, max_len={self.max_len})"


def in_dict(lexicon: Lexicon, syllables: Sequence[str]) -> bool:
    if any(s in SENTINELS for s in syllables):
        return False
    return lexicon.contains(syllables)


def load_lexicon(path) -> Lexicon:
    """Load a word list: one word per line, syllables separated by spaces."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise ResourceIO(f"cannot read lexicon {path}: {exc}") from exc
    entries = []
    for lineno, line in enumerate(lines, 1):
        if "_" in line:
            raise MalformedEntry(f"{path}:{lineno}: underscore in lexicon entry {line!r}")
        syllables = line.split()
        if syllables:
            entries.append(syllables)
    return Lexicon(entries)


@dataclass(frozen=True)
class NameLists:
    family_names: frozenset = frozenset()
    middle_names: frozenset = frozenset()

    @classmethod
    def from_iterables(cls, family: Iterable[str] = (), middle: Iterable[str] = ()):
        return cls(
            frozenset(normalize_syllable(s) for s in family),
            frozenset(normalize_syllable(s) for s in middle),
        )


def is_family_name(name_lists: NameLists, f: str) -> bool:
    return f in name_lists.family_names


def is_middle_name(name_lists: NameLists, f: str) -> bool:
    return f in name_lists.middle_names


def _read_name_file(path) -> list[str]:
    try:
        with open(path, encoding="utf-8") as fh:
            return [line.strip() for line in fh if line.strip()]
    except (OSError, UnicodeDecodeError) as exc:
        raise ResourceIO(f"cannot read name list {path}: {exc}") from exc


def load_name_lists(family_path=None, middle_path=None) -> NameLists:
    family = _read_name_file(family_path) if family_path else []
    middle = _read_name_file(middle_path) if middle_path else []
    return NameLists.from_iterables(family, middle)
