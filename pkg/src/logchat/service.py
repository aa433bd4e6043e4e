"""HTTP facade: sessions, chat, and event views over the analysis engine.

Sessions live in process memory behind an LRU cap; chat within one session is
serialized with a per-session lock while different sessions proceed in
parallel. Every error body uses one envelope: {code, message, detail}.
"""

from __future__ import annotations

import datetime as dt
import os
import threading
import uuid
from collections import OrderedDict
from dataclasses import dataclass

from fastapi import FastAPI, Form, Request, UploadFile
from fastapi.responses import JSONResponse, PlainTextResponse

from . import __version__
from .config import Settings, load_settings
from .errors import (
    EmptyInputError,
    GatewayError,
    LogChatError,
    UnknownCategoryError,
)
from .gateway import ModelGateway
from .indexing import Chunk
from .orchestrator import Answer, Session, answer_query, open_session
from .parsing import export_templates_csv, is_category
from .routing import RouteDecision, Tier, Tool
from .search import SearchResult

DEFAULT_MAX_SESSIONS = 8
DEFAULT_MAX_UPLOAD_BYTES = 50 * 1024 * 1024


def _error(status: int, code: str, message: str, detail: str | None = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "detail": detail},
    )


# -- Answer <-> JSON ----------------------------------------------------------


def route_to_json(route: RouteDecision) -> dict:
    return {
        "tier": route.tier.value,
        "tool": route.tool.value if route.tool else None,
        "keywords": list(route.keywords) if route.keywords else None,
        "event_ids": list(route.event_ids) if route.event_ids else None,
    }


def route_from_json(doc: dict) -> RouteDecision:
    return RouteDecision(
        tier=Tier(doc["tier"]),
        tool=Tool(doc["tool"]) if doc.get("tool") else None,
        keywords=tuple(doc["keywords"]) if doc.get("keywords") else None,
        event_ids=tuple(doc["event_ids"]) if doc.get("event_ids") else None,
    )


def references_to_json(references) -> dict | None:
    if references is None:
        return None
    if isinstance(references, SearchResult):
        return {
            "kind": "search_result",
            "total": references.total,
            "truncated": references.truncated,
            "shown": references.shown,
            "unknown_event_ids": list(references.unknown_event_ids),
            "matches": [{"line_id": lid, "text": text} for lid, text in references.matches],
        }
    return {
        "kind": "chunks",
        "hits": [
            {
                "chunk_id": chunk.chunk_id,
                "first_line": chunk.line_span[0],
                "last_line": chunk.line_span[1],
                "token_count": chunk.token_count,
                "text": chunk.text,
                "score": score,
            }
            for chunk, score in references
        ],
    }


def references_from_json(doc: dict | None):
    if doc is None:
        return None
    if doc["kind"] == "search_result":
        return SearchResult(
            matches=tuple((m["line_id"], m["text"]) for m in doc["matches"]),
            total=doc["total"],
            truncated=doc["truncated"],
            shown=doc["shown"],
            unknown_event_ids=tuple(doc["unknown_event_ids"]),
        )
    return tuple(
        (
            Chunk(
                chunk_id=hit["chunk_id"],
                line_span=(hit["first_line"], hit["last_line"]),
                text=hit["text"],
                token_count=hit["token_count"],
            ),
            hit["score"],
        )
        for hit in doc["hits"]
    )


def answer_to_json(answer: Answer) -> dict:
    return {
        "text": answer.text,
        "route": route_to_json(answer.route),
        "references": references_to_json(answer.references),
        "prompt_kind": answer.prompt_kind,
    }


def answer_from_json(doc: dict) -> Answer:
    return Answer(
        text=doc["text"],
        route=route_from_json(doc["route"]),
        references=references_from_json(doc.get("references")),
        prompt_kind=doc["prompt_kind"],
    )


# -- session store ------------------------------------------------------------


@dataclass
class _Entry:
    session: Session
    created_at: str
    lock: threading.Lock


class SessionStore:
    """LRU-bounded map of session_id -> Session."""

    def __init__(self, capacity: int) -> None:
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self._entries: OrderedDict[str, _Entry] = OrderedDict()
        self._lock = threading.Lock()

    def put(self, session: Session) -> tuple[str, _Entry]:
        entry = _Entry(
            session=session,
            created_at=dt.datetime.now(dt.timezone.utc).isoformat(),
            lock=threading.Lock(),
        )
        session_id = uuid.uuid4().hex
        with self._lock:
            self._entries[session_id] = entry
            while len(self._entries) > self.capacity:
                self._entries.popitem(last=False)
        return session_id, entry

    def get(self, session_id: str) -> _Entry | None:
        with self._lock:
            entry = self._entries.get(session_id)
            if entry is not None:
                self._entries.move_to_end(session_id)
            return entry


# -- app ----------------------------------------------------------------------


def create_app(
    gateway: ModelGateway | None = None,
    settings: Settings | None = None,
    max_sessions: int | None = None,
    max_upload_bytes: int | None = None,
    static_dir: str | None = None,
) -> FastAPI:
    settings = settings or load_settings()
    gateway = gateway or ModelGateway(settings=settings)
    if max_sessions is None:
        max_sessions = int(os.environ.get("LOGCHAT_MAX_SESSIONS", DEFAULT_MAX_SESSIONS))
    if max_upload_bytes is None:
        max_upload_bytes = int(
            float(os.environ.get("LOGCHAT_MAX_UPLOAD_MB", "0") or 0) * 1024 * 1024
        ) or DEFAULT_MAX_UPLOAD_BYTES
    store = SessionStore(capacity=max_sessions)
    app = FastAPI(title="logchat", version=__version__)
    app.state.store = store

    @app.exception_handler(GatewayError)
    async def _gateway_error(_req: Request, exc: GatewayError):
        return _error(502, exc.category, str(exc))

    @app.exception_handler(LogChatError)
    async def _domain_error(_req: Request, exc: LogChatError):
        if isinstance(exc, UnknownCategoryError):
            return _error(
                502,
                "unknown_category",
                "the backend could not identify the log type",
                detail="re-upload with an explicit category form field",
            )
        return _error(400, type(exc).__name__, str(exc))

    @app.post("/api/sessions")
    def create_session(file: UploadFile, category: str | None = Form(default=None)):
        blob = file.file.read(max_upload_bytes + 1)
        if len(blob) > max_upload_bytes:
            return _error(
                400,
                "upload_too_large",
                f"upload exceeds the {max_upload_bytes} byte cap",
            )
        if category is not None and not is_category(category):
            return _error(400, "bad_category", f"unknown category {category!r}")
        raw_text = blob.decode("utf-8", errors="replace")
        if not raw_text:
            return _error(400, "empty_upload", "uploaded file is empty")
        try:
            session = open_session(
                log_file_name=file.filename or "upload.log",
                raw_text=raw_text,
                gateway=gateway,
                category_override=category,
                settings=settings,
            )
        except EmptyInputError as exc:
            return _error(400, "empty_upload", str(exc))
        session_id, entry = store.put(session)
        return {
            "session_id": session_id,
            "file_name": session.log_file_name,
            "category": session.category,
            "line_count": len(session.raw_lines),
            "template_count": len(session.templates),
            "created_at": entry.created_at,
        }

    @app.post("/api/sessions/{session_id}/chat")
    def chat(session_id: str, body: dict):
        entry = store.get(session_id)
        if entry is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        question = body.get("question") if isinstance(body, dict) else None
        if not isinstance(question, str) or not question.strip():
            return _error(400, "bad_question", "body must carry a non-empty question")
        with entry.lock:
            answer = answer_query(entry.session, question, gateway, settings=settings)
        return answer_to_json(answer)

    @app.get("/api/sessions/{session_id}/events")
    def events(session_id: str):
        entry = store.get(session_id)
        if entry is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        return PlainTextResponse(
            export_templates_csv(entry.session.templates), media_type="text/csv"
        )

    @app.get("/api/sessions/{session_id}/structured")
    def structured(session_id: str, event: str | None = None):
        entry = store.get(session_id)
        if entry is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        rows = entry.session.structured.rows
        if event is not None:
            rows = tuple(row for row in rows if row.event_id == event)
        return {
            "headers": list(entry.session.structured.headers),
            "total": len(rows),
            "rows": [
                {
                    "line_id": row.line_id,
                    "header": row.header,
                    "content": row.content,
                    "event_id": row.event_id,
                    "raw": row.raw,
                }
                for row in rows
            ],
        }

    @app.get("/api/health")
    def health():
        if gateway.mock is not None:
            backend = "mock"
        elif settings.api_base:
            backend = "http"
        else:
            backend = "offline"
        return {"status": "ok", "version": __version__, "backend": backend}

    if static_dir is None:
        static_dir = os.environ.get("LOGCHAT_STATIC_DIR", "")
    if static_dir and os.path.isdir(static_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
