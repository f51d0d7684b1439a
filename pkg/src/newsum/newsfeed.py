"""Client for a NewsAPI-style top-headlines endpoint.

The endpoint URL is injectable so tests run against a local stub server;
no unit test touches the network.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass

import requests

from .errors import AuthError, BadPayloadError, EmptyInputError, RateLimitedError, TransportError
from .summarizer import Summary, SummarizerDeps, SummaryRequest, summarize

log = logging.getLogger(__name__)

DEFAULT_ENDPOINT = "https://newsapi.org"
SHORT_CONTENT_SENTENCES = 3


@dataclass(frozen=True)
class NewsItem:
    title: str
    source_name: str
    url: str
    content: str
    published_at: str


@dataclass(frozen=True)
class FeedQuery:
    api_key: str
    query: str | None = None
    page_size: int = 20

    def __post_init__(self):
        if not 1 <= self.page_size <= 100:
            raise ValueError("page_size must be in 1..100")


def _parse_items(payload: dict) -> tuple[list[NewsItem], int]:
    if payload.get("status") != "ok":
        raise BadPayloadError(f"unexpected status {payload.get('status')!r}")
    articles = payload.get("articles")
    if not isinstance(articles, list):
        raise BadPayloadError("payload lacks an 'articles' list")
    items: list[NewsItem] = []
    dropped = 0
    for art in articles:
        if not isinstance(art, dict):
            raise BadPayloadError("article entries must be objects")
        content = art.get("content")
        url = art.get("url")
        if not isinstance(content, str) or not content.strip() or not url:
            dropped += 1
            continue
        source = art.get("source") or {}
        items.append(
            NewsItem(
                title=art.get("title") or "",
                source_name=source.get("name") or "",
                url=url,
                content=content,
                published_at=art.get("publishedAt") or "",
            )
        )
    return items, dropped


def fetch_headlines(
    q: FeedQuery,
    endpoint: str = DEFAULT_ENDPOINT,
    timeout: float = 10.0,
    retries: int = 2,
    backoff: float = 0.5,
) -> list[NewsItem]:
    """GET top headlines, dropping items without usable content.

    Transport failures and 5xx responses are retried ``retries`` times with
    exponential backoff; auth/rate-limit/payload problems fail immediately.
    """
    if not q.api_key:
        raise ValueError("api_key must be non-empty")
    params = {"pageSize": str(q.page_size), "apiKey": q.api_key}
    if q.query:
        params["q"] = q.query
    url = endpoint.rstrip("/") + "/v2/top-headlines"

    last_error: Exception | None = None
    for attempt in range(retries + 1):
        if attempt:
            time.sleep(backoff * 2 ** (attempt - 1))
        try:
            resp = requests.get(url, params=params, timeout=timeout)
        except requests.RequestException as exc:
            last_error = TransportError(f"GET {url} failed: {exc}")
            continue
        if resp.status_code == 401:
            raise AuthError("news endpoint rejected the API key (401)")
        if resp.status_code == 429:
            retry_after = resp.headers.get("Retry-After")
            raise RateLimitedError(
                "news endpoint rate limit hit (429)",
                retry_after=float(retry_after) if retry_after else None,
            )
        if resp.status_code >= 500:
            last_error = TransportError(f"server error {resp.status_code}")
            continue
        if resp.status_code != 200:
            raise BadPayloadError(f"unexpected HTTP status {resp.status_code}")
        try:
            payload = resp.json()
        except ValueError as exc:
            raise BadPayloadError(f"response body is not JSON: {exc}") from exc
        items, dropped = _parse_items(payload)
        if dropped:
            log.info("dropped %d feed items without usable content", dropped)
        return items
    assert last_error is not None
    raise last_error


@dataclass(frozen=True)
class FeedSummary:
    item: NewsItem
    summary: Summary | None  # None marks content that cleaned down to nothing
    short_content: bool


def summarize_feed(items, method: str, top_k: int, deps: SummarizerDeps) -> list[FeedSummary]:
    results: list[FeedSummary] = []
    for item in items:
        try:
            n_sentences = len(deps.pipeline.sentences(item.content))
        except EmptyInputError:
            results.append(FeedSummary(item=item, summary=None, short_content=True))
            continue
        summary = summarize(SummaryRequest(item.content, method, top_k), deps)
        results.append(
            FeedSummary(item=item, summary=summary, short_content=n_sentences < SHORT_CONTENT_SENTENCES)
        )
    return results
