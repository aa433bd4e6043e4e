"""Fixed-depth-tree log template mining.

Lines are clustered by routing through a parse tree: root, then a layer keyed
by content token count, then one layer per leading token position. Leaves
hold clusters; a line joins the most similar cluster above the threshold or
starts a new one, and joining merges the cluster template position-wise
(differing positions become the wildcard).
"""

from __future__ import annotations

import csv
import functools
import io
import re
from dataclasses import dataclass, field
from typing import Iterator, Pattern, Sequence

from ..errors import EmptyInputError, LengthMismatchError, UnknownCategoryError
from .categories import is_category

WILDCARD = "<*>"

_FIELD_RE = re.compile(r"(<[^<>]+>)")
_DIGIT_RE = re.compile(r"\d")


@dataclass(frozen=True)
class DrainConfig:
    """Per-category parsing settings.

    log_format names the header fields of a line, e.g.
    "<Date> <Time> <Level> <Content>"; literal text between fields is kept
    verbatim (regex-flavored, so [ and | need escaping), runs of spaces match
    any whitespace run, and exactly one <Content> field must be present.
    mask_regexes are applied to the content before tokenizing; every match is
    replaced by the wildcard.
    """

    category: str
    log_format: str
    mask_regexes: tuple[str, ...] = ()
    st: float = 0.4
    depth: int = 4
    max_children: int = 100

    def __post_init__(self) -> None:
        if not is_category(self.category):
            raise UnknownCategoryError(self.category)
        if not 0.0 <= self.st <= 1.0:
            raise ValueError(f"st must be within [0, 1], got {self.st}")
        if self.depth < 3:
            raise ValueError(f"depth must be >= 3, got {self.depth}")
        if self.max_children <= 0:
            raise ValueError(f"max_children must be > 0, got {self.max_children}")
        if self.log_format.count("<Content>") != 1:
            raise ValueError("log_format must contain exactly one <Content> field")


@dataclass(frozen=True)
class EventTemplate:
    event_id: str
    template: str
    occurrences: int


@dataclass(frozen=True)
class StructuredRow:
    line_id: int
    header: dict[str, str]
    content: str
    event_id: str
    raw: str


@dataclass(frozen=True)
class StructuredLog:
    headers: tuple[str, ...]
    rows: tuple[StructuredRow, ...]


@functools.lru_cache(maxsize=64)
def _compile_log_format(log_format: str) -> tuple[tuple[str, ...], Pattern[str]]:
    """Build the line regex: literal text kept as written, spaces widened to
    \\s+, each <Name> field becoming a lazy named group."""
    headers: list[str] = []
    pattern = ""
    for i, part in enumerate(_FIELD_RE.split(log_format)):
        if i % 2 == 0:
            pattern += re.sub(" +", r"\\s+", part)
        else:
            name = part[1:-1]
            pattern += f"(?P<{name}>.*?)"
            headers.append(name)
    return tuple(headers), re.compile("^" + pattern + "$")


@functools.lru_cache(maxsize=64)
def _compile_masks(mask_regexes: tuple[str, ...]) -> tuple[Pattern[str], ...]:
    return tuple(re.compile(p) for p in mask_regexes)


def split_line(line: str, config: DrainConfig) -> tuple[dict[str, str], str]:
    """Split one raw line into header fields and the content string.

    A line that does not match log_format is kept rather than rejected (real
    logs carry stack traces and continuations): headers come back empty and
    the whole stripped line is the content.
    """
    headers, pattern = _compile_log_format(config.log_format)
    match = pattern.match(line.strip())
    if match is None:
        return {name: "" for name in headers if name != "Content"}, line.strip()
    fields = {name: match.group(name) or "" for name in headers}
    content = fields.pop("Content")
    return fields, content


def mask_content(content: str, config: DrainConfig) -> list[str]:
    """Replace every mask match with the wildcard, then split on whitespace."""
    for pattern in _compile_masks(config.mask_regexes):
        content = pattern.sub(WILDCARD, content)
    return content.split()


def preprocess_line(line: str, config: DrainConfig) -> tuple[dict[str, str], list[str]]:
    """Header fields plus masked content tokens for one raw line."""
    header, content = split_line(line, config)
    return header, mask_content(content, config)


def seq_dist(
    template_tokens: Sequence[str], line_tokens: Sequence[str]
) -> tuple[float, int]:
    """Similarity between a cluster template and a tokenized line.

    similarity counts positions where the tokens agree, wildcard template
    positions excluded, over the full length; wildcard_count is how many
    template positions are wildcards. Two empty sequences are identical by
    convention: (1.0, 0).
    """
    if len(template_tokens) != len(line_tokens):
        raise LengthMismatchError(
            f"token count mismatch: {len(template_tokens)} vs {len(line_tokens)}"
        )
    if not template_tokens:
        return 1.0, 0
    matches = 0
    wildcards = 0
    for expected, actual in zip(template_tokens, line_tokens):
        if expected == WILDCARD:
            wildcards += 1
        elif expected == actual:
            matches += 1
    return matches / len(template_tokens), wildcards


@dataclass
class _Cluster:
    event_num: int
    template_tokens: list[str]
    size: int = 0


class _Node:
    __slots__ = ("children", "clusters")

    def __init__(self) -> None:
        self.children: dict[object, _Node] = {}
        self.clusters: list[_Cluster] = []


class DrainTree:
    """The mutable parse tree. Single-writer while parsing; frozen outputs."""

    def __init__(self, config: DrainConfig) -> None:
        self.config = config
        self.root = _Node()
        self.clusters: list[_Cluster] = []

    def _route_child(self, node: _Node, token: str) -> _Node:
        # Digit-bearing tokens are almost surely variable: route to the
        # wildcard child instead of spawning one literal child per value.
        if _DIGIT_RE.search(token):
            return node.children.setdefault(WILDCARD, _Node())
        child = node.children.get(token)
        if child is not None:
            return child
        literal_count = len(node.children) - (WILDCARD in node.children)
        if literal_count < self.config.max_children:
            node.children[token] = child = _Node()
            return child
        return node.children.setdefault(WILDCARD, _Node())

    def _leaf_for(self, tokens: Sequence[str]) -> _Node:
        node = self.root.children.setdefault(len(tokens), _Node())
        # Token layers sit at positions 1..depth-2; lines shorter than that
        # attach their clusters at the deepest node their tokens reach.
        for position in range(min(self.config.depth - 2, len(tokens))):
            node = self._route_child(node, tokens[position])
        return node

    def _best_cluster(self, leaf: _Node, tokens: Sequence[str]) -> _Cluster | None:
        best: _Cluster | None = None
        best_sim = -1.0
        best_wildcards = -1
        # Leaf order is creation order, so strict comparisons keep the lowest
        # event id on full ties.
        for cluster in leaf.clusters:
            sim, wildcards = seq_dist(cluster.template_tokens, tokens)
            if sim > best_sim or (sim == best_sim and wildcards > best_wildcards):
                best, best_sim, best_wildcards = cluster, sim, wildcards
        if best is not None and best_sim >= self.config.st:
            return best
        return None

    def add_line(self, tokens: Sequence[str]) -> _Cluster:
        leaf = self._leaf_for(tokens)
        cluster = self._best_cluster(leaf, tokens)
        if cluster is None:
            cluster = _Cluster(len(self.clusters) + 1, list(tokens))
            self.clusters.append(cluster)
            leaf.clusters.append(cluster)
        else:
            cluster.template_tokens = [
                kept if kept == seen else WILDCARD
                for kept, seen in zip(cluster.template_tokens, tokens)
            ]
        cluster.size += 1
        return cluster

    def match_line(self, tokens: Sequence[str]) -> _Cluster | None:
        """Read-only routing: the cluster this line would join, if any."""
        node: _Node | None = self.root.children.get(len(tokens))
        for position in range(min(self.config.depth - 2, len(tokens))):
            if node is None:
                return None
            token = tokens[position]
            if _DIGIT_RE.search(token):
                node = node.children.get(WILDCARD)
            else:
                node = node.children.get(token) or node.children.get(WILDCARD)
        if node is None:
            return None
        return self._best_cluster(node, tokens)


def parse_lines(
    lines: Sequence[str], config: DrainConfig
) -> tuple[StructuredLog, list[EventTemplate]]:
    """Cluster every line into an event; returns the structured rows and the
    mined templates in discovery order.

    Deterministic: a pure function of (lines, config). Every line gets
    exactly one event id, so template occurrences sum to len(lines).
    """
    if not lines:
        raise EmptyInputError("no lines to parse")
    format_headers, _ = _compile_log_format(config.log_format)
    header_names = tuple(name for name in format_headers if name != "Content")
    tree = DrainTree(config)
    rows: list[StructuredRow] = []
    for line_id, line in enumerate(lines, start=1):
        header, content = split_line(line, config)
        tokens = mask_content(content, config)
        cluster = tree.add_line(tokens)
        rows.append(
            StructuredRow(
                line_id=line_id,
                header=header,
                content=content,
                event_id=f"Event{cluster.event_num}",
                raw=line,
            )
        )
    templates = [
        EventTemplate(
            event_id=f"Event{cluster.event_num}",
            template=" ".join(cluster.template_tokens),
            occurrences=cluster.size,
        )
        for cluster in tree.clusters
    ]
    return StructuredLog(headers=header_names, rows=tuple(rows)), templates


def export_templates_csv(templates: Sequence[EventTemplate]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["EventId", "EventTemplate", "Occurrences"])
    for template in templates:
        writer.writerow([template.event_id, template.template, template.occurrences])
    return buffer.getvalue()


def export_structured_csv(structured: StructuredLog) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["LineId", *structured.headers, "Content", "EventId"])
    for row in structured.rows:
        writer.writerow(
            [
                row.line_id,
                *(row.header.get(name, "") for name in structured.headers),
                row.content,
                row.event_id,
            ]
        )
    return buffer.getvalue()


def iter_template_rows(templates: Sequence[EventTemplate]) -> Iterator[list[object]]:
    """Templates as [event_id, template, occurrences] rows (prompt plumbing)."""
    for template in templates:
        yield [template.event_id, template.template, template.occurrences]
