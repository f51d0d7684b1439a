"""Deterministic synthetic news-style corpus.

Articles mimic the overlap statistics of CNN/DailyMail data: a handful of
"core" sentences share topic vocabulary and news-speak anchors (so they are
central in the similarity graph), filler sentences carry unique rare words
(so they have large TF-IDF mass but little mutual overlap), and highlights
are noisy partial copies of a subset of the core sentences.

Everything derives from numpy PCG64 streams, so a (seed, split) pair always
produces byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

import numpy as np

FUNCTION_WORDS = (
    "the a an of to in on for with at by from after before over under "
    "and or but as that this it he she they we was were has have had "
    "is are be been will would said told when where while during"
).split()

ANCHOR_WORDS = (
    "officials minister report announced confirmed authorities investigation "
    "statement government police witnesses spokesman sources capital residents "
    "emergency committee decision evidence incident officers leaders agency "
    "security region crisis response measures warning"
).split()

_PARAPHRASE_WORDS = (
    "reportedly allegedly apparently local national major key new latest "
    "several many more urgent serious recent due amid despite following"
).split()

_SYLLABLES = (
    "ba be bi bo bu da de di do du fa fe fi fo fu ga ge gi go gu "
    "ka ke ki ko ku la le li lo lu ma me mi mo mu na ne ni no nu "
    "pa pe pi po pu ra re ri ro ru sa se si so su ta te ti to tu "
    "va ve vi vo vu za ze zi zo zu"
).split()


def _word(rng: np.random.Generator, n_syllables: int) -> str:
    return "".join(_SYLLABLES[rng.integers(0, len(_SYLLABLES))] for _ in range(n_syllables))


def _topic_pool(size: int = 300, seed: int = 997) -> list[str]:
    rng = np.random.Generator(np.random.PCG64(seed))
    pool: list[str] = []
    seen = set(FUNCTION_WORDS) | set(ANCHOR_WORDS) | set(_PARAPHRASE_WORDS)
    while len(pool) < size:
        w = _word(rng, 3)
        if w not in seen:
            seen.add(w)
            pool.append(w)
    return pool


TOPIC_POOL = _topic_pool()


def _pick(rng: np.random.Generator, pool, k: int, replace: bool = True) -> list[str]:
    idx = rng.choice(len(pool), size=k, replace=replace)
    return [pool[int(i)] for i in idx]


N_CORES = 6


def _core_sentence(rng, topic) -> str:
    words = (
        _pick(rng, FUNCTION_WORDS, 3)
        + _pick(rng, ANCHOR_WORDS, 1)
        + _pick(rng, topic, 5)
        + [_word(rng, 3)]
    )
    rng.shuffle(words)
    return " ".join(words) + "."


def _filler_sentence(rng, topic) -> str:
    words = _pick(rng, FUNCTION_WORDS, 3)
    # off-topic words sometimes come from other articles' topic vocabulary,
    # so a term's global feature profile does not give centrality away
    for _ in range(3):
        if rng.random() < 0.35:
            words.append(TOPIC_POOL[int(rng.integers(0, len(TOPIC_POOL)))])
        else:
            words.append(_word(rng, 3))
    words += _pick(rng, topic, int(rng.integers(1, 3)))
    rng.shuffle(words)
    return " ".join(words) + "."


def _highlight(rng, core: str, topic) -> str:
    words = [w for w in core.rstrip(".").split() if rng.random() < 0.45]
    while len(words) < 3:
        words.append(_PARAPHRASE_WORDS[int(rng.integers(0, len(_PARAPHRASE_WORDS)))])
    words += _pick(rng, topic, 2)
    words += _pick(rng, _PARAPHRASE_WORDS, 3)
    return " ".join(words) + "."


def make_article(rng: np.random.Generator) -> tuple[str, str]:
    topic = _pick(rng, TOPIC_POOL, 8, replace=False)
    cores = [_core_sentence(rng, topic) for _ in range(N_CORES)]
    fillers = [_filler_sentence(rng, topic) for _ in range(int(rng.integers(9, 15)))]
    sentences = cores + fillers
    rng.shuffle(sentences)
    article = " ".join(sentences)
    # two bullets restate core facts, one covers a peripheral sentence
    chosen = rng.choice(N_CORES, size=2, replace=False)
    sources = [cores[int(i)] for i in sorted(chosen)]
    sources.append(fillers[int(rng.integers(0, len(fillers)))])
    highlights = " ".join(_highlight(rng, src, topic) for src in sources)
    return article, highlights


def _stable_seed(seed: int, split: str, i: int) -> int:
    digest = hashlib.sha256(f"{seed}-{split}-{i}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def make_records(n: int, seed: int, split: str = "train") -> list[dict]:
    records = []
    for i in range(n):
        rng = np.random.Generator(np.random.PCG64(_stable_seed(seed, split, i)))
        article, highlights = make_article(rng)
        rec_id = hashlib.sha1(f"{split}-{seed}-{i}".encode()).hexdigest()
        records.append({"id": rec_id, "article": article, "highlights": highlights})
    return records


def write_csv(records, path: str | Path) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["id", "article", "highlights"])
        writer.writeheader()
        writer.writerows(records)
    return path


def write_jsonl(records, path: str | Path) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")
    return path
