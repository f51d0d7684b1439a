"""Rule-based sentence splitting with an abbreviation guard.

Operates on cleaned text (lowercase alphanumerics, space and . ! ? ,).
Boundaries sit at . ! ? followed by a space or end of text; a period is not
a boundary when the preceding token is a known abbreviation, a single
letter (initials) or when the period sits between digits (decimals).
Sentences shorter than ``min_words`` are merged into their neighbour.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import EmptyInputError

_TERMINALS = ".!?"


class AbbreviationSet:
    """Lowercase abbreviations stored without their trailing period."""

    def __init__(self, entries):
        entries = frozenset(e.lower().rstrip(".") for e in entries if e.strip())
        if not entries:
            raise ValueError("abbreviation set must not be empty")
        self._entries = entries

    def __contains__(self, token: str) -> bool:
        return token in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    @classmethod
    def from_file(cls, path: str | Path) -> "AbbreviationSet":
        entries = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    entries.append(line)
        return cls(entries)

    @classmethod
    def default(cls) -> "AbbreviationSet":
        ref = resources.files("newsum.data").joinpath("abbreviations.txt")
        with resources.as_file(ref) as path:
            return cls.from_file(path)


@dataclass(frozen=True)
class SentenceSet:
    sentences: tuple[str, ...]
    positions: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.sentences)


def _token_before(text: str, i: int) -> str:
    j = i
    while j > 0 and text[j - 1] != " ":
        j -= 1
    return text[j:i]


def _is_boundary(text: str, i: int, abbrevs: AbbreviationSet) -> bool:
    c = text[i]
    if i + 1 < len(text) and text[i + 1] != " ":
        return False
    if c in "!?":
        return True
    # period guards
    if 0 < i < len(text) - 1 and text[i - 1].isdigit() and text[i + 1].isdigit():
        return False
    token = _token_before(text, i)
    if len(token) == 1 and token.isalpha():
        return False
    if token in abbrevs:
        return False
    return True


def split_sentences(text: str, abbrevs: AbbreviationSet, min_words: int = 3) -> SentenceSet:
    if min_words < 1:
        raise ValueError("min_words must be >= 1")
    text = text.strip()
    if not text:
        raise EmptyInputError("no text to segment")

    raw: list[str] = []
    start = 0
    for i, c in enumerate(text):
        if c in _TERMINALS and _is_boundary(text, i, abbrevs):
            chunk = text[start : i + 1].strip()
            if chunk:
                raw.append(chunk)
            start = i + 1
    tail = text[start:].strip()
    if tail:
        raw.append(tail)

    # merge short fragments into the preceding sentence (following, if first)
    merged: list[str] = []
    pending = ""
    for sent in raw:
        if pending:
            sent = pending + " " + sent
            pending = ""
        if len(sent.split()) < min_words:
            if merged:
                merged[-1] = merged[-1] + " " + sent
            else:
                pending = sent
        else:
            merged.append(sent)
    if pending:
        if merged:
            merged[-1] = merged[-1] + " " + pending
        else:
            merged.append(pending)

    return SentenceSet(sentences=tuple(merged), positions=tuple(range(len(merged))))
