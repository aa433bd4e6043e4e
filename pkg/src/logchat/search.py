"""Deterministic retrieval over raw and structured logs.

Pure functions over immutable inputs. Totals are computed before any
truncation and never change afterwards, so prompts built from a trimmed
result still report the true match count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyKeywordsError
from .parsing.drain import EventTemplate, StructuredLog

DEFAULT_MAX_LINES = 200


@dataclass(frozen=True)
class SearchResult:
    matches: tuple[tuple[int, str], ...]
    total: int
    truncated: bool
    shown: int
    unknown_event_ids: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.shown != len(self.matches):
            raise ValueError("shown must equal the number of kept matches")
        if self.total < self.shown:
            raise ValueError("total cannot be below shown")
        if self.truncated != (self.total > self.shown):
            raise ValueError("truncated must mean total > shown")

    @property
    def lines(self) -> list[str]:
        return [text for _, text in self.matches]


def _full_result(
    matches: list[tuple[int, str]], unknown_event_ids: tuple[str, ...] = ()
) -> SearchResult:
    return SearchResult(
        matches=tuple(matches),
        total=len(matches),
        truncated=False,
        shown=len(matches),
        unknown_event_ids=unknown_event_ids,
    )


def keyword_search(raw_lines: Sequence[str], keywords: Sequence[str]) -> SearchResult:
    """Lines containing ANY keyword, case-insensitive substring, file order."""
    needles = [k.lower() for k in keywords if k]
    if not needles:
        raise EmptyKeywordsError("no keywords to search for")
    matches = [
        (line_id, line)
        for line_id, line in enumerate(raw_lines, start=1)
        if any(needle in line.lower() for needle in needles)
    ]
    return _full_result(matches)


def event_search(
    structured: StructuredLog,
    templates: Sequence[EventTemplate],
    event_ids: Sequence[str],
) -> tuple[SearchResult, list[list[object]]]:
    """Rows whose event id is among event_ids, in file order, plus the
    matching [event_id, template, occurrences] rows for prompt context.

    Ids absent from the template table are reported on the result, never
    fatal: the remaining ids still search.
    """
    if not event_ids:
        raise EmptyKeywordsError("no event ids to search for")
    wanted = set(event_ids)
    known = {t.event_id for t in templates}
    unknown = tuple(e for e in event_ids if e not in known)
    matches = [
        (row.line_id, row.raw)
        for row in structured.rows
        if row.event_id in wanted
    ]
    relevant = [
        [t.event_id, t.template, t.occurrences] for t in templates if t.event_id in wanted
    ]
    return _full_result(matches, unknown_event_ids=unknown), relevant


def truncate_context(result: SearchResult, max_lines: int = DEFAULT_MAX_LINES) -> SearchResult:
    """Keep the first max_lines matches; the total stays honest."""
    if max_lines < 1:
        raise ValueError(f"max_lines must be >= 1, got {max_lines}")
    if result.shown <= max_lines:
        return result
    kept = result.matches[:max_lines]
    return SearchResult(
        matches=kept,
        total=result.total,
        truncated=True,
        shown=len(kept),
        unknown_event_ids=result.unknown_event_ids,
    )
