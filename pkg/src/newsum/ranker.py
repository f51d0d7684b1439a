"""Sentence importance ranking: TF-IDF aggregation, similarity-graph
PageRank, and a regression forest that learns the PageRank scores."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .corpus import CorpusSplit
from .errors import EmptyInputError, FeatureSpaceMismatchError
from .forest import ForestConfig, RegressionForest, fit_forest, rows_to_csr
from .segmenter import AbbreviationSet, SentenceSet, split_sentences
from .textprep import ContractionTable, clean
from .vectorizer import TfIdfModel, Vocabulary, fit_tfidf, similarity_matrix, tokenize

METHODS = ("baseline", "graph", "hybrid")


@dataclass(frozen=True)
class PageRankParams:
    damping: float = 0.85
    tol: float = 1e-6
    max_iters: int = 100

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ValueError(f"damping must be in (0, 1), got {self.damping}")
        if self.tol <= 0.0 or self.max_iters < 1:
            raise ValueError(f"invalid pagerank params: {self}")


@dataclass(frozen=True)
class SentenceGraph:
    n: int
    weights: np.ndarray

    @classmethod
    def from_matrix(cls, weights: np.ndarray) -> "SentenceGraph":
        weights = np.asarray(weights, dtype=np.float64)
        if weights.ndim != 2 or weights.shape[0] != weights.shape[1]:
            raise ValueError("weights must be a square matrix")
        if (weights < 0.0).any():
            raise ValueError("edge weights must be nonnegative")
        if not np.array_equal(weights, weights.T):
            raise ValueError("weights must be symmetric")
        if np.diagonal(weights).any():
            raise ValueError("diagonal must be zero (no self-loops)")
        return cls(n=weights.shape[0], weights=weights)


@dataclass(frozen=True)
class RankedSentences:
    scores: tuple[float, ...]
    method: str
    ranking: tuple[int, ...]

    @classmethod
    def from_scores(cls, scores: Sequence[float], method: str) -> "RankedSentences":
        scores = tuple(float(s) for s in scores)
        return cls(scores=scores, method=method, ranking=stable_ranking(scores))


def stable_ranking(scores: Sequence[float]) -> tuple[int, ...]:
    """Indices sorted by descending score; ties keep original sentence order."""
    arr = np.asarray(scores, dtype=np.float64)
    return tuple(int(i) for i in np.argsort(-arr, kind="stable"))


def pagerank(graph: SentenceGraph, params: PageRankParams = PageRankParams()) -> np.ndarray:
    if graph.n < 1:
        raise ValueError("graph must have at least one node")
    return kernels.pagerank_scores(graph.weights, params.damping, params.tol, params.max_iters)


def score_baseline(model: TfIdfModel) -> RankedSentences:
    scores = [sum(vec.values()) for vec in model.vectors]
    return RankedSentences.from_scores(scores, "baseline")


def score_graph(sents: SentenceSet, params: PageRankParams = PageRankParams()) -> RankedSentences:
    model = fit_tfidf(sents)
    graph = SentenceGraph.from_matrix(similarity_matrix(model))
    return RankedSentences.from_scores(pagerank(graph, params), "graph")


# ---------------------------------------------------------------------------
# Hybrid: global feature space + forest trained on PageRank targets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HybridFeatureSpace:
    global_vocab: Vocabulary
    idf: np.ndarray  # aligned with global_vocab.terms
    n_sentences: int

    def __len__(self) -> int:
        return len(self.global_vocab)


@dataclass(frozen=True)
class TextPipeline:
    """Cleaning/segmentation settings shared by training and inference."""

    contractions: ContractionTable
    abbrevs: AbbreviationSet
    min_words: int = 3

    @classmethod
    def default(cls) -> "TextPipeline":
        return cls(contractions=ContractionTable.default(), abbrevs=AbbreviationSet.default())

    def sentences(self, raw_text: str) -> SentenceSet:
        cleaned = clean(raw_text, self.contractions).text
        if not cleaned:
            raise EmptyInputError("article empty after cleaning")
        return split_sentences(cleaned, self.abbrevs, self.min_words)


def build_feature_space(
    train: CorpusSplit, V: int, pipeline: TextPipeline | None = None
) -> HybridFeatureSpace:
    if len(train) == 0:
        raise EmptyInputError("empty training corpus")
    if V < 1:
        raise ValueError("V must be >= 1")
    pipeline = pipeline or TextPipeline.default()

    df: dict[str, int] = {}
    total = 0
    for rec in train.records:
        try:
            sents = pipeline.sentences(rec.article)
        except EmptyInputError:
            continue
        for sent in sents.sentences:
            total += 1
            for tok in set(tokenize(sent)):
                df[tok] = df.get(tok, 0) + 1
    if total == 0:
        raise EmptyInputError("no sentences in training corpus")

    # terms present in every sentence would get idf 0; they carry no signal
    eligible = [(t, c) for t, c in df.items() if c < total]
    eligible.sort(key=lambda tc: (-tc[1], tc[0]))
    kept = [t for t, _ in eligible[:V]]
    vocab = Vocabulary.from_terms(kept)
    idf = np.array([math.log(total / df[t]) for t in kept], dtype=np.float64)
    return HybridFeatureSpace(global_vocab=vocab, idf=idf, n_sentences=total)


def featurize(sentence: str, space: HybridFeatureSpace) -> dict[int, float]:
    tokens = tokenize(sentence)
    if not tokens:
        return {}
    counts: dict[str, int] = {}
    for tok in tokens:
        counts[tok] = counts.get(tok, 0) + 1
    inv_len = 1.0 / len(tokens)
    index = space.global_vocab.index
    vec: dict[int, float] = {}
    for tok, cnt in counts.items():
        j = index.get(tok)
        if j is not None:
            vec[j] = cnt * inv_len * space.idf[j]
    return vec


def train_forest(
    train: CorpusSplit,
    space: HybridFeatureSpace,
    cfg: ForestConfig,
    seed: int,
    pipeline: TextPipeline | None = None,
    params: PageRankParams = PageRankParams(),
) -> RegressionForest:
    """Fit the forest on (sentence features, per-article PageRank score) pairs."""
    if len(train) == 0:
        raise EmptyInputError("empty training corpus")
    pipeline = pipeline or TextPipeline.default()

    rows: list[dict[int, float]] = []
    targets: list[float] = []
    for rec in train.records:
        try:
            sents = pipeline.sentences(rec.article)
        except EmptyInputError:
            continue
        ranked = score_graph(sents, params)
        for sent, score in zip(sents.sentences, ranked.scores):
            rows.append(featurize(sent, space))
            targets.append(score)
    if not rows:
        raise EmptyInputError("no training sentences survived cleaning")

    indptr, indices, data = rows_to_csr(rows)
    return fit_forest(indptr, indices, data, np.asarray(targets), len(space), cfg, seed)


def score_hybrid(
    sents: SentenceSet, forest: RegressionForest, space: HybridFeatureSpace
) -> RankedSentences:
    if forest.n_features != len(space):
        raise FeatureSpaceMismatchError(
            f"forest has {forest.n_features} features, space has {len(space)}"
        )
    preds = forest.predict(featurize(s, space) for s in sents.sentences)
    return RankedSentences.from_scores(preds, "hybrid")
