"""Session lifecycle and query answering.

Upload builds everything once (chunk + embed, recognize + mine templates);
the session is immutable afterwards, and each question is independent:
route, run the chosen retrieval, render the stage prompt, generate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .config import Settings, load_settings
from .errors import EmptyInputError
from .gateway import ChatRequest, ModelGateway
from .indexing import Chunk, ChunkIndex, content_key, index_log, semantic_search
from .parsing import (
    EventTemplate,
    StructuredLog,
    export_templates_csv,
    identify_log_type,
    load_drain_config,
    parse_lines,
)
from .prompts import (
    SYSTEM_TEXT,
    render_all_events_prompt,
    render_event_search_prompt,
    render_keyword_search_prompt,
    render_retrieve_prompt,
)
from .routing import RouteDecision, Tier, Tool, route_query
from .search import SearchResult, event_search, keyword_search, truncate_context

SEMANTIC_TOP_K = 2

PROMPT_KIND_BY_TOOL = {
    Tool.KEYWORD: "search",
    Tool.EVENT: "event",
    Tool.SEMANTIC: "retrieve",
}


@dataclass(frozen=True)
class Session:
    log_file_name: str
    raw_lines: tuple[str, ...]
    category: str
    structured: StructuredLog
    templates: tuple[EventTemplate, ...]
    index: ChunkIndex
    content_hash: str


@dataclass(frozen=True)
class Answer:
    text: str
    route: RouteDecision
    references: SearchResult | tuple[tuple[Chunk, float], ...] | None
    prompt_kind: str

    def __post_init__(self) -> None:
        if (self.references is not None) != (self.route.tier is Tier.PARTIAL):
            raise ValueError("references go with the Partial tier only")
        expected = (
            "all_event"
            if self.route.tier is Tier.ALL
            else "general"
            if self.route.tier is Tier.GENERAL
            else PROMPT_KIND_BY_TOOL[self.route.tool]
        )
        if self.prompt_kind != expected:
            raise ValueError(f"prompt_kind {self.prompt_kind!r} inconsistent with route")


def split_log_lines(raw_text: str) -> list[str]:
    """File text to lines; one final trailing newline is not an extra line."""
    lines = raw_text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def open_session(
    log_file_name: str,
    raw_text: str,
    gateway: ModelGateway,
    category_override: str | None = None,
    settings: Settings | None = None,
) -> Session:
    """Index and parse an uploaded log. All-or-nothing: any failure discards
    the partial setup because the Session is only assembled at the end."""
    if not raw_text:
        raise EmptyInputError("uploaded log is empty")
    settings = settings or load_settings()
    lines = split_log_lines(raw_text)
    index = index_log(
        raw_text,
        gateway,
        chunk_budget=settings.chunk_tokens,
        cache_dir=settings.cache_dir or None,
    )
    category = category_override or identify_log_type(lines, gateway)
    structured, templates = parse_lines(lines, load_drain_config(category))
    return Session(
        log_file_name=log_file_name,
        raw_lines=tuple(lines),
        category=category,
        structured=structured,
        templates=tuple(templates),
        index=index,
        content_hash=content_key(raw_text),
    )


def build_all_event_prompt(session: Session, query: str) -> str:
    return render_all_events_prompt(
        log_file_name=session.log_file_name,
        templates_csv=export_templates_csv(session.templates),
        first_line=session.raw_lines[0],
        last_line=session.raw_lines[-1],
        line_count=len(session.raw_lines),
        template_count=len(session.templates),
        question=query,
    )


def build_search_prompt(
    result: SearchResult, keywords: Sequence[str], query: str, max_lines: int
) -> str:
    return render_keyword_search_prompt(
        total=result.total,
        shown_lines=result.lines,
        truncated=result.truncated,
        keywords=keywords,
        max_lines=max_lines,
        question=query,
    )


def build_event_prompt(
    result: SearchResult,
    event_ids: Sequence[str],
    relevant_templates: Sequence[Sequence[object]],
    query: str,
    max_lines: int,
) -> str:
    return render_event_search_prompt(
        total=result.total,
        shown_lines=result.lines,
        truncated=result.truncated,
        events=event_ids,
        template_rows=relevant_templates,
        max_lines=max_lines,
        question=query,
    )


def build_retrieve_prompt(chunk_texts: Sequence[str], query: str) -> str:
    return render_retrieve_prompt(chunk_texts, query)


def answer_query(
    session: Session,
    query: str,
    gateway: ModelGateway,
    settings: Settings | None = None,
) -> Answer:
    """Route the question, gather evidence, and generate the reply."""
    if not query:
        raise ValueError("query must be non-empty")
    settings = settings or load_settings()
    route = route_query(query, gateway)

    references: SearchResult | tuple[tuple[Chunk, float], ...] | None = None
    if route.tier is Tier.ALL:
        prompt_kind = "all_event"
        prompt = build_all_event_prompt(session, query)
    elif route.tier is Tier.GENERAL:
        prompt_kind = "general"
        prompt = query
    elif route.tool is Tool.KEYWORD:
        prompt_kind = "search"
        result = truncate_context(
            keyword_search(session.raw_lines, route.keywords), settings.max_lines
        )
        references = result
        prompt = build_search_prompt(result, route.keywords, query, settings.max_lines)
    elif route.tool is Tool.EVENT:
        prompt_kind = "event"
        full, relevant = event_search(session.structured, session.templates, route.event_ids)
        result = truncate_context(full, settings.max_lines)
        references = result
        prompt = build_event_prompt(result, route.event_ids, relevant, query, settings.max_lines)
    else:
        prompt_kind = "retrieve"
        hits = semantic_search(session.index, query, gateway, k=SEMANTIC_TOP_K)
        references = tuple(hits)
        prompt = build_retrieve_prompt([chunk.text for chunk, _ in hits], query)

    text = gateway.chat_complete(
        ChatRequest(
            system_text=SYSTEM_TEXT,
            user_text=prompt,
            temperature=settings.temperature,
        )
    )
    return Answer(text=text, route=route, references=references, prompt_kind=prompt_kind)
