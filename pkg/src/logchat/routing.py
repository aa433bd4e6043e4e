"""Two-level query routing.

Level 1 picks how much log context a question needs (All, Partial, General);
level 2, only for Partial, picks the retrieval tool (Keyword, Event,
Semantic) plus its parameters. Any reply the router cannot interpret, after
one retry, degrades to Partial/Semantic: semantic retrieval is safe on every
question, while a wrongly chosen full-table answer fabricates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import MissingParamsError, RouteParseError
from .gateway import ChatRequest, ModelGateway
from .jsontext import extract_json_object
from .prompts import SYSTEM_TEXT, render_route_level1_prompt, render_route_level2_prompt


class Tier(enum.Enum):
    ALL = "All"
    PARTIAL = "Partial"
    GENERAL = "General"


class Tool(enum.Enum):
    KEYWORD = "Keyword"
    EVENT = "Event"
    SEMANTIC = "Semantic"


@dataclass(frozen=True)
class RouteDecision:
    tier: Tier
    tool: Tool | None = None
    keywords: tuple[str, ...] | None = None
    event_ids: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if (self.tool is not None) != (self.tier is Tier.PARTIAL):
            raise ValueError("tool must be present exactly when tier is Partial")
        if (self.keywords is not None) != (self.tool is Tool.KEYWORD):
            raise ValueError("keywords go with the Keyword tool only")
        if self.keywords is not None and not self.keywords:
            raise ValueError("keywords must be non-empty when present")
        if (self.event_ids is not None) != (self.tool is Tool.EVENT):
            raise ValueError("event_ids go with the Event tool only")
        if self.event_ids is not None and not self.event_ids:
            raise ValueError("event_ids must be non-empty when present")


FALLBACK_DECISION = RouteDecision(tier=Tier.PARTIAL, tool=Tool.SEMANTIC)

_TIERS = {"all": Tier.ALL, "partial": Tier.PARTIAL, "general": Tier.GENERAL}
# The level-2 prompt itself says 'se' where it means semantic; accept both.
_TOOLS = {"keyword": Tool.KEYWORD, "event": Tool.EVENT, "semantic": Tool.SEMANTIC, "se": Tool.SEMANTIC}


def _ask(gateway: ModelGateway, prompt: str) -> str:
    return gateway.chat_complete(ChatRequest(system_text=SYSTEM_TEXT, user_text=prompt))


def _choice_of(reply: str) -> str | None:
    parsed = extract_json_object(reply)
    if parsed is None:
        return None
    choice = parsed.get("choice")
    if not isinstance(choice, str):
        return None
    return choice.strip().lower()


def _dedup_fold(items: Sequence[object]) -> tuple[str, ...]:
    seen: set[str] = set()
    kept: list[str] = []
    for item in items:
        if not isinstance(item, str):
            continue
        text = item.strip()
        if not text or text.lower() in seen:
            continue
        seen.add(text.lower())
        kept.append(text)
    return tuple(kept)


def route_level1(query: str, gateway: ModelGateway) -> Tier:
    """Classify the question into a tier; one retry on an uninterpretable reply."""
    if not query:
        raise ValueError("query must be non-empty")
    prompt = render_route_level1_prompt(query)
    reply = ""
    for _ in range(2):
        reply = _ask(gateway, prompt)
        choice = _choice_of(reply)
        if choice in _TIERS:
            return _TIERS[choice]
    raise RouteParseError(reply, level=1)


def route_level2(
    query: str, gateway: ModelGateway
) -> tuple[Tool, tuple[str, ...] | None, tuple[str, ...] | None]:
    """Pick the Partial-tier tool and its parameters.

    Returns (tool, keywords, event_ids); the two lists are mutually
    exclusive. A Keyword or Event choice without usable parameters raises
    MissingParams rather than guessing.
    """
    if not query:
        raise ValueError("query must be non-empty")
    prompt = render_route_level2_prompt(query)
    reply = ""
    for _ in range(2):
        reply = _ask(gateway, prompt)
        choice = _choice_of(reply)
        if choice not in _TOOLS:
            continue
        tool = _TOOLS[choice]
        parsed = extract_json_object(reply) or {}
        if tool is Tool.KEYWORD:
            keywords = _dedup_fold(parsed.get("keywords") or [])
            if not keywords:
                raise MissingParamsError("keyword route without keywords")
            return tool, keywords, None
        if tool is Tool.EVENT:
            events = _dedup_fold(parsed.get("events") or [])
            if not events:
                raise MissingParamsError("event route without event ids")
            return tool, None, events
        return tool, None, None
    raise RouteParseError(reply, level=2)


def route_query(query: str, gateway: ModelGateway) -> RouteDecision:
    """Full routing with the documented degradation to Partial/Semantic."""
    try:
        tier = route_level1(query, gateway)
    except RouteParseError:
        return FALLBACK_DECISION
    if tier is not Tier.PARTIAL:
        return RouteDecision(tier=tier)
    try:
        tool, keywords, event_ids = route_level2(query, gateway)
    except (RouteParseError, MissingParamsError):
        return FALLBACK_DECISION
    return RouteDecision(tier=Tier.PARTIAL, tool=tool, keywords=keywords, event_ids=event_ids)
