"""Deterministic text-cleaning pipeline applied to articles and highlights.

Seven ordered steps: lowercase, contraction expansion, URL stripping, HTML
tag stripping, special-character removal, quote removal, whitespace
collapse. Sentence punctuation (. ! ?) and commas survive so the segmenter
downstream still has boundaries to work with.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .corpus import ArticleRecord

STEP_NAMES = (
    "lowercase",
    "contractions",
    "urls",
    "tags",
    "specials",
    "quotes",
    "whitespace",
)

# A URL is a scheme- or www-prefixed run of non-whitespace. Matching is not
# anchored to token starts: tag/quote removal can expose an embedded URL
# that a token-start rule would miss, violating the no-URL output guarantee.
URL_RE = re.compile(r"(?:https?://|www\.)\S+")
TAG_RE = re.compile(r"<[^>]*>")

# Everything outside this set becomes a space in the specials step; quotes
# are kept here because the quotes step deletes them without spacing.
_SPECIALS_RE = re.compile(r"[^a-z0-9\s.!?,'\"]")
_WS_RE = re.compile(r"\s+")
_NT_FALLBACK_RE = re.compile(r"([a-z]+)n't(?![a-z0-9])")


class ContractionTable:
    """Immutable contraction -> expansion mapping, longest key matched first."""

    def __init__(self, mapping: dict[str, str]):
        lowered: dict[str, str] = {}
        for key, value in mapping.items():
            k = key.lower()
            if k in lowered:
                raise ValueError(f"duplicate contraction key after lowercasing: {k!r}")
            lowered[k] = value.lower()
        self._mapping = lowered
        keys = sorted(lowered, key=len, reverse=True)
        if keys:
            alternation = "|".join(re.escape(k) for k in keys)
            self._pattern = re.compile(rf"(?<![a-z0-9])(?:{alternation})(?![a-z0-9])")
        else:
            self._pattern = None

    @property
    def mapping(self) -> dict[str, str]:
        return dict(self._mapping)

    def __len__(self) -> int:
        return len(self._mapping)

    def expand(self, text: str) -> str:
        """Expand table entries, then apply the generic n't -> " not" rule."""
        if self._pattern is not None:
            text = self._pattern.sub(lambda m: self._mapping[m.group(0)], text)
        return _NT_FALLBACK_RE.sub(r"\1 not", text)

    @classmethod
    def from_file(cls, path: str | Path) -> "ContractionTable":
        mapping: dict[str, str] = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line.strip() or line.lstrip().startswith("#"):
                    continue
                if "\t" not in line:
                    raise ValueError(f"{path}:{lineno}: expected 'contraction<TAB>expansion'")
                key, _, value = line.partition("\t")
                key, value = key.strip(), value.strip()
                if not key or not value:
                    raise ValueError(f"{path}:{lineno}: empty contraction or expansion")
                if key.lower() in mapping:
                    raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
                mapping[key.lower()] = value
        return cls(mapping)

    @classmethod
    def default(cls) -> "ContractionTable":
        ref = resources.files("newsum.data").joinpath("contractions.tsv")
        with resources.as_file(ref) as path:
            return cls.from_file(path)


@dataclass(frozen=True)
class CleanText:
    text: str
    steps_applied: tuple[str, ...] = STEP_NAMES


def clean(raw: str, table: ContractionTable) -> CleanText:
    text = raw.lower()
    text = table.expand(text)
    text = URL_RE.sub(" ", text)
    text = TAG_RE.sub(" ", text)
    text = _SPECIALS_RE.sub(" ", text)
    text = text.replace("'", "").replace('"', "")
    # quote deletion can splice a www-prefixed URL back together
    text = URL_RE.sub(" ", text)
    text = _WS_RE.sub(" ", text).strip()
    return CleanText(text=text)


def clean_record(rec: ArticleRecord, table: ContractionTable) -> tuple[CleanText, CleanText]:
    return clean(rec.article, table), clean(rec.highlights, table)
