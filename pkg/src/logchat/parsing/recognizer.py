"""LLM-backed log type identification."""

from __future__ import annotations

from typing import Sequence

from ..errors import EmptyInputError, UnknownCategoryError
from ..gateway import ChatRequest, ModelGateway
from ..jsontext import extract_json_object
from ..prompts import SYSTEM_TEXT, render_recognizer_prompt
from .categories import CATEGORIES

SAMPLE_LINES = 10


def identify_log_type(sample_lines: Sequence[str], gateway: ModelGateway) -> str:
    """Ask the model which category the sampled lines belong to.

    The reply must carry a JSON object {"category": <name>}; one retry covers
    a malformed or off-registry first answer.
    """
    if not sample_lines:
        raise EmptyInputError("no sample lines")
    prompt = render_recognizer_prompt(CATEGORIES, sample_lines[:SAMPLE_LINES])
    reply = ""
    for _ in range(2):
        reply = gateway.chat_complete(
            ChatRequest(system_text=SYSTEM_TEXT, user_text=prompt)
        )
        parsed = extract_json_object(reply)
        if parsed is None:
            continue
        name = parsed.get("category")
        if isinstance(name, str) and name in CATEGORIES:
            return name
    raise UnknownCategoryError(reply)
