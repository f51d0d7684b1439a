"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 runtime error. Flags beat
environment variables (NEWS_API_KEY, NEWSUM_NEWS_ENDPOINT), which beat
built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .corpus import load_corpus
from .errors import NewsumError
from .evalharness import EvalConfig, emit_report, evaluate
from .forest import ForestConfig
from .modelio import load_model, save_model
from .newsfeed import DEFAULT_ENDPOINT, FeedQuery, fetch_headlines, summarize_feed
from .ranker import METHODS, build_feature_space, train_forest
from .rouge import score_pair
from .service import ServiceConfig, serve
from .summarizer import SummarizerDeps, SummaryRequest, summarize


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _infer_format(path: str, explicit: str | None) -> str:
    if explicit:
        return explicit
    return "jsonl" if Path(path).suffix.lower() in (".jsonl", ".ndjson") else "csv"


def _load_deps(model_path: str | None) -> SummarizerDeps:
    forest = space = None
    if model_path:
        forest, space = load_model(model_path)
    return SummarizerDeps.default(forest=forest, feature_space=space)


def _cmd_summarize(args) -> int:
    text = Path(args.file).read_text(encoding="utf-8") if args.file else sys.stdin.read()
    deps = _load_deps(args.model)
    summary = summarize(SummaryRequest(text, args.method, args.top_k), deps)
    print(summary.text)
    print(f"elapsed_ms: {summary.elapsed_ms:.3f}", file=sys.stderr)
    return 0


def _cmd_evaluate(args) -> int:
    corpus = load_corpus(args.corpus, _infer_format(args.corpus, args.format))
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    cfg = EvalConfig(n_articles=args.n, methods=methods, top_k=args.top_k, seed=args.seed)
    deps = _load_deps(args.model)
    result = evaluate(corpus, cfg, deps)
    emit_report(result, args.report, "json")
    if args.markdown:
        emit_report(result, args.markdown, "markdown")
    for method, stats in result.per_method.items():
        print(
            f"{method}: rouge1={stats.rouge1_f1:.4f} rouge2={stats.rouge2_f1:.4f} "
            f"rougeL={stats.rougeL_f1:.4f} mean_ms={stats.mean_ms:.2f} "
            f"({stats.n_evaluated} evaluated, {stats.n_skipped} skipped)"
        )
    return 0


def _cmd_train_hybrid(args) -> int:
    corpus = load_corpus(args.corpus, _infer_format(args.corpus, args.format))
    if args.n_articles:
        from .corpus import take_first

        corpus = take_first(corpus, args.n_articles)
    space = build_feature_space(corpus, args.vocab_size)
    cfg = ForestConfig(trees=args.trees, max_depth=args.depth, min_samples_leaf=args.min_leaf)
    forest = train_forest(corpus, space, cfg, args.seed)
    save_model(args.out, forest, space)
    print(f"trained {cfg.trees} trees on {len(corpus)} articles -> {args.out}")
    return 0


def _cmd_rouge(args) -> int:
    candidate = Path(args.candidate).read_text(encoding="utf-8")
    reference = Path(args.reference).read_text(encoding="utf-8")
    report = score_pair(candidate, reference)
    json.dump(report.as_dict(), sys.stdout, indent=2)
    print()
    return 0


def _cmd_fetch_news(args) -> int:
    api_key = args.api_key or os.environ.get("NEWS_API_KEY", "")
    feed = FeedQuery(api_key=api_key, query=args.query, page_size=args.page_size)
    items = fetch_headlines(feed, endpoint=args.endpoint)
    deps = _load_deps(args.model)
    rows = []
    for fs in summarize_feed(items, args.method, args.top_k, deps):
        rows.append(
            {
                "title": fs.item.title,
                "source": fs.item.source_name,
                "url": fs.item.url,
                "published_at": fs.item.published_at,
                "summary": fs.summary.text if fs.summary else "",
                "elapsed_ms": fs.summary.elapsed_ms if fs.summary else 0.0,
                "short_content": fs.short_content,
            }
        )
    json.dump(rows, sys.stdout, indent=2)
    print()
    return 0


def _cmd_serve(args) -> int:
    config = ServiceConfig.from_bind(
        args.bind,
        default_method=args.method,
        default_top_k=args.top_k,
        news_endpoint=args.news_endpoint or os.environ.get("NEWSUM_NEWS_ENDPOINT"),
        news_api_key=args.api_key or os.environ.get("NEWS_API_KEY"),
    )
    deps = _load_deps(args.model)
    if config.default_method == "hybrid" and deps.forest is None:
        raise NewsumError("--method hybrid requires --model")
    serve(config, deps)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="newsum", description="Extractive news summarization toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="summarize text from stdin or a file")
    p.add_argument("--file", help="read the article from this file instead of stdin")
    p.add_argument("--method", choices=METHODS, default="graph")
    p.add_argument("--top-k", type=int, default=3)
    p.add_argument("--model", help="model bundle JSON (required for --method hybrid)")
    p.set_defaults(func=_cmd_summarize)

    p = sub.add_parser("evaluate", help="average ROUGE over a corpus prefix")
    p.add_argument("--corpus", required=True)
    p.add_argument("--format", choices=("csv", "jsonl"))
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--methods", default="baseline,graph")
    p.add_argument("--top-k", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", required=True, help="JSON report output path")
    p.add_argument("--markdown", help="also write a markdown table here")
    p.add_argument("--model", help="model bundle JSON for the hybrid method")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("train-hybrid", help="train the hybrid forest on a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--format", choices=("csv", "jsonl"))
    p.add_argument("--n-articles", type=int, help="train on the first N articles only")
    p.add_argument("--vocab-size", type=int, default=5000)
    p.add_argument("--trees", type=int, default=50)
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--min-leaf", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="model bundle JSON output path")
    p.set_defaults(func=_cmd_train_hybrid)

    p = sub.add_parser("rouge", help="score a candidate file against a reference file")
    p.add_argument("--candidate", required=True)
    p.add_argument("--reference", required=True)
    p.set_defaults(func=_cmd_rouge)

    p = sub.add_parser("fetch-news", help="fetch live headlines and summarize them")
    p.add_argument("--query")
    p.add_argument("--page-size", type=int, default=10)
    p.add_argument("--endpoint", default=os.environ.get("NEWSUM_NEWS_ENDPOINT", DEFAULT_ENDPOINT))
    p.add_argument("--api-key", help="overrides the NEWS_API_KEY environment variable")
    p.add_argument("--method", choices=METHODS, default="graph")
    p.add_argument("--top-k", type=int, default=3)
    p.add_argument("--model")
    p.set_defaults(func=_cmd_fetch_news)

    p = sub.add_parser("serve", help="run the JSON HTTP service")
    p.add_argument("--bind", default="127.0.0.1:8080")
    p.add_argument("--method", choices=METHODS, default="graph")
    p.add_argument("--top-k", type=int, default=3)
    p.add_argument("--model")
    p.add_argument("--news-endpoint")
    p.add_argument("--api-key")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NewsumError, OSError, ValueError) as exc:
        print(f"newsum: error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
