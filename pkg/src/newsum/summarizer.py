"""Unified summarization entry point over the three ranking methods."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import EmptyInputError, MissingModelError
from .forest import RegressionForest
from .ranker import (
    METHODS,
    HybridFeatureSpace,
    PageRankParams,
    RankedSentences,
    TextPipeline,
    score_baseline,
    score_graph,
    score_hybrid,
)
from .vectorizer import fit_tfidf


@dataclass(frozen=True)
class SummaryRequest:
    text: str
    method: str = "graph"
    top_k: int = 3

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")


@dataclass(frozen=True)
class SummarizerDeps:
    pipeline: TextPipeline
    pagerank: PageRankParams = PageRankParams()
    forest: RegressionForest | None = None
    feature_space: HybridFeatureSpace | None = None

    @classmethod
    def default(cls, forest=None, feature_space=None) -> "SummarizerDeps":
        return cls(pipeline=TextPipeline.default(), forest=forest, feature_space=feature_space)


@dataclass(frozen=True)
class Summary:
    text: str
    chosen: tuple[tuple[int, float], ...]  # (sentence index, score), descending score
    method: str
    elapsed_ms: float


def rank_sentences(sents, method: str, deps: SummarizerDeps) -> RankedSentences:
    if method == "baseline":
        return score_baseline(fit_tfidf(sents))
    if method == "graph":
        return score_graph(sents, deps.pagerank)
    if deps.forest is None or deps.feature_space is None:
        raise MissingModelError("hybrid method needs a trained forest and feature space")
    return score_hybrid(sents, deps.forest, deps.feature_space)


def summarize(req: SummaryRequest, deps: SummarizerDeps) -> Summary:
    start = time.perf_counter()
    sents = deps.pipeline.sentences(req.text)
    ranked = rank_sentences(sents, req.method, deps)
    k = min(req.top_k, len(sents))
    chosen = tuple((i, ranked.scores[i]) for i in ranked.ranking[:k])
    text = " ".join(sents.sentences[i] for i, _ in chosen)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return Summary(text=text, chosen=chosen, method=req.method, elapsed_ms=elapsed_ms)
