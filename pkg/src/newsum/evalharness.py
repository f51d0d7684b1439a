"""Batch evaluation: average ROUGE over a corpus prefix plus timing stats."""

from __future__ import annotations

import json
import statistics
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import CorpusSplit, take_first
from .errors import EmptyCorpusError, EmptyInputError, MissingModelError
from .ranker import METHODS
from .rouge import score_pair
from .summarizer import SummarizerDeps, SummaryRequest, summarize
from .textprep import clean


@dataclass(frozen=True)
class EvalConfig:
    n_articles: int = 100
    methods: tuple[str, ...] = ("baseline", "graph")
    top_k: int = 3
    seed: int = 0

    def __post_init__(self):
        if self.n_articles < 1:
            raise ValueError("n_articles must be >= 1")
        if not self.methods:
            raise ValueError("methods must be non-empty")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}")


@dataclass(frozen=True)
class ArticleScore:
    article_index: int
    rouge1_f1: float
    rouge2_f1: float
    rougeL_f1: float


@dataclass(frozen=True)
class MethodStats:
    n_evaluated: int
    n_skipped: int
    rouge1_f1: float
    rouge2_f1: float
    rougeL_f1: float
    mean_ms: float
    median_ms: float
    p95_ms: float
    per_article: tuple[ArticleScore, ...] = ()


@dataclass(frozen=True)
class EvalResult:
    config: EvalConfig
    per_method: dict[str, MethodStats]


def _percentile_95(values: list[float]) -> float:
    if len(values) == 1:
        return values[0]
    qs = statistics.quantiles(values, n=20, method="inclusive")
    return qs[-1]


def evaluate(corpus: CorpusSplit, cfg: EvalConfig, deps: SummarizerDeps) -> EvalResult:
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot evaluate an empty corpus")
    if "hybrid" in cfg.methods and (deps.forest is None or deps.feature_space is None):
        raise MissingModelError("hybrid evaluation needs a trained forest and feature space")

    prefix = take_first(corpus, cfg.n_articles)
    per_method: dict[str, MethodStats] = {}
    for method in cfg.methods:
        scores: list[ArticleScore] = []
        timings: list[float] = []
        skipped = 0
        for i, rec in enumerate(prefix.records):
            try:
                summary = summarize(SummaryRequest(rec.article, method, cfg.top_k), deps)
            except EmptyInputError:
                skipped += 1
                continue
            reference = clean(rec.highlights, deps.pipeline.contractions).text
            report = score_pair(summary.text, reference)
            scores.append(
                ArticleScore(
                    article_index=i,
                    rouge1_f1=report.rouge1.f1,
                    rouge2_f1=report.rouge2.f1,
                    rougeL_f1=report.rougeL.f1,
                )
            )
            timings.append(summary.elapsed_ms)
        n = len(scores)
        per_method[method] = MethodStats(
            n_evaluated=n,
            n_skipped=skipped,
            rouge1_f1=sum(s.rouge1_f1 for s in scores) / n if n else 0.0,
            rouge2_f1=sum(s.rouge2_f1 for s in scores) / n if n else 0.0,
            rougeL_f1=sum(s.rougeL_f1 for s in scores) / n if n else 0.0,
            mean_ms=sum(timings) / n if n else 0.0,
            median_ms=statistics.median(timings) if timings else 0.0,
            p95_ms=_percentile_95(timings) if timings else 0.0,
            per_article=tuple(scores),
        )
    return EvalResult(config=cfg, per_method=per_method)


REPORT_SCHEMA_VERSION = 1


def result_to_dict(result: EvalResult) -> dict:
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "config": {
            "n_articles": result.config.n_articles,
            "methods": list(result.config.methods),
            "top_k": result.config.top_k,
            "seed": result.config.seed,
        },
        "per_method": {
            m: {
                "n_evaluated": s.n_evaluated,
                "n_skipped": s.n_skipped,
                "rouge1_f1": s.rouge1_f1,
                "rouge2_f1": s.rouge2_f1,
                "rougeL_f1": s.rougeL_f1,
                "mean_ms": s.mean_ms,
                "median_ms": s.median_ms,
                "p95_ms": s.p95_ms,
                "per_article": [
                    [a.article_index, a.rouge1_f1, a.rouge2_f1, a.rougeL_f1]
                    for a in s.per_article
                ],
            }
            for m, s in result.per_method.items()
        },
    }


def result_from_dict(doc: dict) -> EvalResult:
    if doc.get("schema_version") != REPORT_SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema version: {doc.get('schema_version')!r}")
    cfg = EvalConfig(
        n_articles=doc["config"]["n_articles"],
        methods=tuple(doc["config"]["methods"]),
        top_k=doc["config"]["top_k"],
        seed=doc["config"]["seed"],
    )
    per_method = {}
    for m, s in doc["per_method"].items():
        per_method[m] = MethodStats(
            n_evaluated=s["n_evaluated"],
            n_skipped=s["n_skipped"],
            rouge1_f1=s["rouge1_f1"],
            rouge2_f1=s["rouge2_f1"],
            rougeL_f1=s["rougeL_f1"],
            mean_ms=s["mean_ms"],
            median_ms=s["median_ms"],
            p95_ms=s["p95_ms"],
            per_article=tuple(ArticleScore(*row) for row in s["per_article"]),
        )
    return EvalResult(config=cfg, per_method=per_method)


def _markdown_table(result: EvalResult) -> str:
    lines = [
        "| Model | ROUGE-1 | ROUGE-2 | ROUGE-L | Mean ms | Median ms | P95 ms |",
        "|---|---|---|---|---|---|---|",
    ]
    for m, s in result.per_method.items():
        lines.append(
            f"| {m} | {s.rouge1_f1:.4f} | {s.rouge2_f1:.4f} | {s.rougeL_f1:.4f} "
            f"| {s.mean_ms:.2f} | {s.median_ms:.2f} | {s.p95_ms:.2f} |"
        )
    return "\n".join(lines) + "\n"


def emit_report(result: EvalResult, path: str | Path, format: str = "json") -> None:
    if format not in ("json", "markdown"):
        raise ValueError(f"unknown report format {format!r}")
    path = Path(path)
    if format == "json":
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(result_to_dict(result), fh)
            fh.write("\n")
    else:
        path.write_text(_markdown_table(result), encoding="utf-8")


def parse_report(path: str | Path) -> EvalResult:
    with open(path, encoding="utf-8") as fh:
        return result_from_dict(json.load(fh))
