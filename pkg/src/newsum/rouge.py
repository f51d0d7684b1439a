"""ROUGE-1, ROUGE-2 and ROUGE-L with precision/recall/F1, from scratch.

ROUGE-N uses clipped n-gram counts; ROUGE-L runs a dynamic-programming LCS
over the whole candidate/reference token sequences.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .vectorizer import tokenize


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, overlap: float, n_candidate: int, n_reference: int) -> "RougeScore":
        p = overlap / n_candidate if n_candidate else 0.0
        r = overlap / n_reference if n_reference else 0.0
        f1 = 0.0 if p + r == 0.0 else 2.0 * p * r / (p + r)
        return cls(precision=p, recall=r, f1=f1)


@dataclass(frozen=True)
class RougeReport:
    rouge1: RougeScore
    rouge2: RougeScore
    rougeL: RougeScore

    def as_dict(self) -> dict:
        return {
            name: {"precision": s.precision, "recall": s.recall, "f1": s.f1}
            for name, s in (("rouge1", self.rouge1), ("rouge2", self.rouge2), ("rougeL", self.rougeL))
        }


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int) -> RougeScore:
    if n not in (1, 2):
        raise ValueError("n must be 1 or 2")
    cand = _ngrams(candidate, n)
    ref = _ngrams(reference, n)
    overlap = sum(min(cnt, ref[g]) for g, cnt in cand.items())
    return RougeScore.from_counts(overlap, sum(cand.values()), sum(ref.values()))


def rouge_l(candidate: Sequence[str], reference: Sequence[str]) -> RougeScore:
    codes: dict[str, int] = {}
    for tok in candidate:
        codes.setdefault(tok, len(codes))
    for tok in reference:
        codes.setdefault(tok, len(codes))
    a = np.array([codes[t] for t in candidate], dtype=np.int64)
    b = np.array([codes[t] for t in reference], dtype=np.int64)
    lcs = int(kernels.lcs_length(a, b))
    return RougeScore.from_counts(lcs, len(candidate), len(reference))


def score_pair(candidate: str, reference: str) -> RougeReport:
    cand = tokenize(candidate.lower())
    ref = tokenize(reference.lower())
    return RougeReport(
        rouge1=rouge_n(cand, ref, 1),
        rouge2=rouge_n(cand, ref, 2),
        rougeL=rouge_l(cand, ref),
    )
