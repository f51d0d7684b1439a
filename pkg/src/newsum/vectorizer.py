"""Per-article TF-IDF over sentences and cosine similarities between them.

Each sentence of one article is treated as a document: TF is the in-sentence
relative frequency, IDF is ln(sentence count / sentence frequency), and the
vocabulary is ordered by first occurrence. Vectors are sparse maps from
vocabulary index to weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import kernels
from .errors import EmptyInputError
from .segmenter import SentenceSet

_EDGE_PUNCT = ".!?,"


def tokenize(text: str) -> list[str]:
    """Whitespace split with sentence punctuation stripped off token edges."""
    tokens = []
    for tok in text.split():
        tok = tok.strip(_EDGE_PUNCT)
        if tok:
            tokens.append(tok)
    return tokens


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    index: Mapping[str, int]

    @classmethod
    def from_terms(cls, terms) -> "Vocabulary":
        terms = tuple(terms)
        index = {t: i for i, t in enumerate(terms)}
        if len(index) != len(terms):
            raise ValueError("vocabulary terms must be unique")
        return cls(terms=terms, index=index)

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class TfIdfModel:
    vocab: Vocabulary
    doc_count: int
    df: Mapping[str, int]
    vectors: tuple[Mapping[int, float], ...]


def fit_tfidf(sents: SentenceSet) -> TfIdfModel:
    if len(sents) == 0:
        raise EmptyInputError("no sentences to vectorize")
    tokenized = [tokenize(s) for s in sents.sentences]

    terms: list[str] = []
    index: dict[str, int] = {}
    df: dict[str, int] = {}
    for tokens in tokenized:
        for tok in tokens:
            if tok not in index:
                index[tok] = len(terms)
                terms.append(tok)
        for tok in set(tokens):
            df[tok] = df.get(tok, 0) + 1

    n = len(tokenized)
    idf = {t: math.log(n / df[t]) for t in terms}

    vectors = []
    for tokens in tokenized:
        vec: dict[int, float] = {}
        if tokens:
            inv_len = 1.0 / len(tokens)
            counts: dict[str, int] = {}
            for tok in tokens:
                counts[tok] = counts.get(tok, 0) + 1
            for tok, cnt in counts.items():
                vec[index[tok]] = cnt * inv_len * idf[tok]
        vectors.append(vec)

    vocab = Vocabulary(terms=tuple(terms), index=index)
    return TfIdfModel(vocab=vocab, doc_count=n, df=df, vectors=tuple(vectors))


def cosine_similarity(a: Mapping[int, float], b: Mapping[int, float]) -> float:
    norm_a = math.sqrt(sum(v * v for v in a.values()))
    norm_b = math.sqrt(sum(v * v for v in b.values()))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    if len(b) < len(a):
        a, b = b, a
    dot = sum(v * b[k] for k, v in a.items() if k in b)
    return min(1.0, max(0.0, dot / (norm_a * norm_b)))


def model_to_csr(model: TfIdfModel) -> tuple[np.ndarray, np.ndarray, np.ndarray, int, int]:
    """Flatten the sparse vectors into CSR arrays with sorted column indices."""
    n = len(model.vectors)
    indptr = np.zeros(n + 1, dtype=np.int64)
    cols: list[int] = []
    vals: list[float] = []
    for i, vec in enumerate(model.vectors):
        for k in sorted(vec):
            cols.append(k)
            vals.append(vec[k])
        indptr[i + 1] = len(cols)
    indices = np.asarray(cols, dtype=np.int64)
    data = np.asarray(vals, dtype=np.float64)
    return indptr, indices, data, n, len(model.vocab)


def similarity_matrix(model: TfIdfModel) -> np.ndarray:
    """Symmetric pairwise cosine matrix with a zeroed diagonal."""
    indptr, indices, data, n, n_cols = model_to_csr(model)
    return kernels.similarity_from_csr(indptr, indices, data, n, max(n_cols, 1))
