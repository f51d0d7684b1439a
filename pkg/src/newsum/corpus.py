"""CNN/DailyMail-format corpus loading (CSV or JSONL)."""

from __future__ import annotations

import csv
import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import MalformedRowError, MissingColumnError

log = logging.getLogger(__name__)

_ID_RE = re.compile(r"^[0-9a-f]{40}$")

SPLIT_NAMES = ("train", "validation", "test")


@dataclass(frozen=True)
class ArticleRecord:
    """One corpus row: SHA1-style id (optional), article body, reference highlights."""

    article: str
    highlights: str
    id: str | None = None


@dataclass(frozen=True)
class CorpusSplit:
    name: str
    records: tuple[ArticleRecord, ...]
    skipped: int = 0

    def __len__(self) -> int:
        return len(self.records)


def _valid_record(raw_id, article, highlights) -> ArticleRecord | None:
    if not isinstance(article, str) or not isinstance(highlights, str):
        return None
    if not article.strip() or not highlights.strip():
        return None
    rec_id = None
    if isinstance(raw_id, str) and _ID_RE.fullmatch(raw_id.strip()):
        rec_id = raw_id.strip()
    return ArticleRecord(article=article, highlights=highlights, id=rec_id)


def _infer_name(path: Path) -> str:
    stem = path.stem.lower()
    if "val" in stem:
        return "validation"
    if "test" in stem:
        return "test"
    return "train"


def load_corpus(path: str | Path, format: str = "csv", name: str | None = None) -> CorpusSplit:
    """Load a corpus file, skipping rows that fail validation.

    Raises MissingColumnError when a CSV header lacks article/highlights and
    MalformedRowError when more than half of the rows fail to parse (which
    signals the wrong format was requested).
    """
    path = Path(path)
    if format not in ("csv", "jsonl"):
        raise ValueError(f"unknown corpus format {format!r}")
    if not path.exists():
        raise FileNotFoundError(path)

    records: list[ArticleRecord] = []
    skipped = 0
    malformed = 0
    total = 0

    if format == "csv":
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            for col in ("article", "highlights"):
                if col not in header:
                    raise MissingColumnError(f"{path}: header lacks {col!r} column")
            for row in reader:
                total += 1
                if row.get("article") is None or row.get("highlights") is None:
                    malformed += 1
                    skipped += 1
                    continue
                rec = _valid_record(row.get("id"), row["article"], row["highlights"])
                if rec is None:
                    skipped += 1
                else:
                    records.append(rec)
    else:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                total += 1
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError:
                    malformed += 1
                    skipped += 1
                    continue
                if not isinstance(obj, dict):
                    malformed += 1
                    skipped += 1
                    continue
                rec = _valid_record(obj.get("id"), obj.get("article"), obj.get("highlights"))
                if rec is None:
                    skipped += 1
                else:
                    records.append(rec)

    if total > 0 and malformed * 2 > total:
        raise MalformedRowError(
            f"{path}: {malformed}/{total} rows failed to parse — wrong format?"
        )
    if skipped:
        log.info("loaded %s: %d records, %d skipped", path.name, len(records), skipped)
    return CorpusSplit(name=name or _infer_name(path), records=tuple(records), skipped=skipped)


def take_first(split: CorpusSplit, n: int) -> CorpusSplit:
    if n < 0:
        raise ValueError("n must be >= 0")
    return CorpusSplit(name=split.name, records=split.records[:n], skipped=split.skipped)
