"""JSON HTTP service wrapping the summarizer library.

Endpoints: POST /summarize, GET /live, GET /healthz. Handlers hold no
summarization logic of their own — every response body is produced by
``summarize_payload``/``live_payload``, which call the same library
operations any client could.
"""

from __future__ import annotations

import json
import logging
import signal
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .errors import EmptyInputError, MissingModelError, NewsumError
from .newsfeed import FeedQuery, fetch_headlines, summarize_feed
from .summarizer import SummarizerDeps, SummaryRequest, summarize

log = logging.getLogger(__name__)

MAX_BODY_BYTES = 1 << 20
MAX_SENTENCES = 2000


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    default_method: str = "graph"
    default_top_k: int = 3
    news_endpoint: str | None = None
    news_api_key: str | None = None
    news_page_size: int = 10

    @classmethod
    def from_bind(cls, bind: str, **kwargs) -> "ServiceConfig":
        host, _, port = bind.rpartition(":")
        if not host or not port.isdigit() or not 0 <= int(port) <= 65535:
            raise ValueError(f"invalid bind address {bind!r}")
        return cls(host=host, port=int(port), **kwargs)


class RequestRejected(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


def methods_available(deps: SummarizerDeps) -> list[str]:
    methods = ["baseline", "graph"]
    if deps.forest is not None and deps.feature_space is not None:
        methods.append("hybrid")
    return methods


def summarize_payload(text: str, method: str, top_k: int, deps: SummarizerDeps) -> dict:
    sents = deps.pipeline.sentences(text)
    if len(sents) > MAX_SENTENCES:
        raise RequestRejected(413, f"article has {len(sents)} sentences (limit {MAX_SENTENCES})")
    summary = summarize(SummaryRequest(text, method, top_k), deps)
    return {
        "summary": summary.text,
        "sentences": [
            {"index": i, "score": score, "text": sents.sentences[i]}
            for i, score in summary.chosen
        ],
        "method": summary.method,
        "elapsed_ms": summary.elapsed_ms,
    }


def live_payload(query: str | None, method: str, top_k: int, deps: SummarizerDeps, config: ServiceConfig) -> list[dict]:
    feed = FeedQuery(
        api_key=config.news_api_key or "",
        query=query,
        page_size=config.news_page_size,
    )
    items = fetch_headlines(feed, endpoint=config.news_endpoint)
    rows = []
    for fs in summarize_feed(items, method, top_k, deps):
        rows.append(
            {
                "title": fs.item.title,
                "url": fs.item.url,
                "summary": fs.summary.text if fs.summary else "",
                "elapsed_ms": fs.summary.elapsed_ms if fs.summary else 0.0,
                "short_content": fs.short_content,
            }
        )
    return rows


class _Handler(BaseHTTPRequestHandler):
    server_version = "newsum"
    deps: SummarizerDeps
    config: ServiceConfig

    def log_message(self, fmt, *args):
        log.debug("%s " + fmt, self.address_string(), *args)

    def _send_json(self, status: int, payload) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self) -> bytes:
        length = int(self.headers.get("Content-Length") or 0)
        if length > MAX_BODY_BYTES:
            raise RequestRejected(413, f"request body exceeds {MAX_BODY_BYTES} bytes")
        return self.rfile.read(length)

    def _validate_method(self, method) -> str:
        if method not in ("baseline", "graph", "hybrid"):
            raise RequestRejected(400, f"unknown method {method!r}")
        if method == "hybrid" and "hybrid" not in methods_available(self.deps):
            raise RequestRejected(501, "hybrid method not available: no model loaded")
        return method

    def do_POST(self):
        if urlparse(self.path).path != "/summarize":
            self._send_json(404, {"error": "not found"})
            return
        try:
            body = self._read_body()
            try:
                doc = json.loads(body)
            except json.JSONDecodeError as exc:
                raise RequestRejected(400, f"malformed JSON: {exc}")
            if not isinstance(doc, dict) or not isinstance(doc.get("text"), str):
                raise RequestRejected(400, "body must be a JSON object with a string 'text'")
            method = self._validate_method(doc.get("method", self.config.default_method))
            top_k = doc.get("top_k", self.config.default_top_k)
            if not isinstance(top_k, int) or top_k < 1:
                raise RequestRejected(400, "top_k must be a positive integer")
            payload = summarize_payload(doc["text"], method, top_k, self.deps)
        except RequestRejected as exc:
            self._send_json(exc.status, {"error": exc.message})
        except EmptyInputError as exc:
            self._send_json(422, {"error": str(exc)})
        except MissingModelError as exc:
            self._send_json(501, {"error": str(exc)})
        except NewsumError as exc:
            self._send_json(500, {"error": str(exc)})
        else:
            self._send_json(200, payload)

    def do_GET(self):
        url = urlparse(self.path)
        if url.path == "/healthz":
            self._send_json(200, {"status": "ok", "methods_available": methods_available(self.deps)})
            return
        if url.path != "/live":
            self._send_json(404, {"error": "not found"})
            return
        try:
            if not self.config.news_endpoint or not self.config.news_api_key:
                raise RequestRejected(503, "live feed not configured")
            qs = parse_qs(url.query)
            method = self._validate_method(qs.get("method", [self.config.default_method])[0])
            query = qs.get("q", [None])[0]
            payload = live_payload(query, method, self.config.default_top_k, self.deps, self.config)
        except RequestRejected as exc:
            self._send_json(exc.status, {"error": exc.message})
        except NewsumError as exc:
            self._send_json(502, {"error": str(exc)})
        else:
            self._send_json(200, payload)


def make_server(config: ServiceConfig, deps: SummarizerDeps) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"deps": deps, "config": config})
    return ThreadingHTTPServer((config.host, config.port), handler)


def serve(config: ServiceConfig, deps: SummarizerDeps) -> None:
    """Run the service until SIGINT/SIGTERM."""
    server = make_server(config, deps)
    stop = threading.Event()

    def _shutdown(signum, frame):
        stop.set()
        threading.Thread(target=server.shutdown, daemon=True).start()

    signal.signal(signal.SIGINT, _shutdown)
    signal.signal(signal.SIGTERM, _shutdown)
    log.info("serving on %s:%d (methods: %s)", config.host, config.port, methods_available(deps))
    try:
        server.serve_forever()
    finally:
        server.server_close()
