"""Extractive news summarization toolkit.

Three rankers (TF-IDF baseline, similarity-graph PageRank, forest
regression on PageRank targets), a from-scratch ROUGE-1/2/L scorer, a
CNN/DailyMail-format corpus loader, a batch evaluation harness, a live
news-feed client, a CLI and a JSON HTTP service.
"""

from .corpus import ArticleRecord, CorpusSplit, load_corpus, take_first
from .errors import (
    AuthError,
    BadPayloadError,
    EmptyCorpusError,
    EmptyInputError,
    FeatureSpaceMismatchError,
    MalformedRowError,
    MissingColumnError,
    MissingModelError,
    NewsumError,
    RateLimitedError,
    TransportError,
)
from .evalharness import EvalConfig, EvalResult, emit_report, evaluate, parse_report
from .forest import ForestConfig, RegressionForest, load_forest, save_forest
from .ranker import (
    METHODS,
    HybridFeatureSpace,
    PageRankParams,
    RankedSentences,
    SentenceGraph,
    TextPipeline,
    build_feature_space,
    featurize,
    pagerank,
    score_baseline,
    score_graph,
    score_hybrid,
    train_forest,
)
from .rouge import RougeReport, RougeScore, rouge_l, rouge_n, score_pair
from .segmenter import AbbreviationSet, SentenceSet, split_sentences
from .summarizer import Summary, SummarizerDeps, SummaryRequest, summarize
from .textprep import CleanText, ContractionTable, clean, clean_record
from .vectorizer import TfIdfModel, Vocabulary, cosine_similarity, fit_tfidf, similarity_matrix

__version__ = "0.1.0"
