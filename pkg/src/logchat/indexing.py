"""Chunking, embedding, and semantic retrieval over a raw log.

A "token" here is a whitespace-delimited word; the budget caps how many fit
in one chunk. Chunks never split a line and tile the file: joining their
texts with newlines gives back the input (minus a final trailing newline,
which line splitting cannot represent).
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, EmptyInputError
from .gateway import ModelGateway

DEFAULT_CHUNK_BUDGET = 1024
_MAGIC = b"LOGCHIX1"


@dataclass(frozen=True)
class Chunk:
    chunk_id: int
    line_span: tuple[int, int]
    text: str
    token_count: int


@dataclass(frozen=True)
class ChunkIndex:
    chunks: tuple[Chunk, ...]
    vectors: np.ndarray
    dim: int


def chunk_log(raw_text: str, chunk_budget: int = DEFAULT_CHUNK_BUDGET) -> list[Chunk]:
    """Greedy line packing: whole lines are appended until the next one would
    push past the budget; a single line over the budget stands alone."""
    if not raw_text:
        raise EmptyInputError("no log text to chunk")
    if chunk_budget < 1:
        raise ValueError(f"chunk_budget must be >= 1, got {chunk_budget}")
    lines = raw_text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    chunks: list[Chunk] = []
    start = 0
    tokens = 0
    for i, line in enumerate(lines):
        line_tokens = len(line.split())
        if i > start and tokens + line_tokens > chunk_budget:
            chunks.append(_make_chunk(len(chunks), lines, start, i, tokens))
            start, tokens = i, 0
        tokens += line_tokens
    chunks.append(_make_chunk(len(chunks), lines, start, len(lines), tokens))
    return chunks


def _make_chunk(chunk_id: int, lines: list[str], start: int, end: int, tokens: int) -> Chunk:
    return Chunk(
        chunk_id=chunk_id,
        line_span=(start + 1, end),
        text="\n".join(lines[start:end]),
        token_count=tokens,
    )


def build_index(chunks: Sequence[Chunk], gateway: ModelGateway) -> ChunkIndex:
    """Embed every chunk and normalize at ingest, so retrieval scores are
    plain dot products."""
    if not chunks:
        raise EmptyInputError("no chunks to index")
    vectors = gateway.embed([chunk.text for chunk in chunks])
    dims = {v.shape[0] for v in vectors}
    if len(dims) != 1:
        raise DimensionMismatchError(f"inconsistent embedding dimensions: {sorted(dims)}")
    matrix = np.vstack([v.astype(np.float64) for v in vectors])
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    matrix = np.divide(matrix, norms, out=matrix, where=norms > 0)
    matrix.setflags(write=False)
    return ChunkIndex(chunks=tuple(chunks), vectors=matrix, dim=matrix.shape[1])


def semantic_search(
    index: ChunkIndex, query: str, gateway: ModelGateway, k: int = 2
) -> list[tuple[Chunk, float]]:
    """Exact top-k by cosine, descending score, ties to the lower chunk_id."""
    if not index.chunks:
        raise EmptyInputError("empty index")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    (query_vec,) = gateway.embed([query])
    query_vec = query_vec.astype(np.float64)
    norm = float(np.linalg.norm(query_vec))
    if norm > 0.0:
        query_vec = query_vec / norm
    scores = index.vectors @ query_vec
    order = sorted(range(len(index.chunks)), key=lambda i: (-scores[i], i))
    return [(index.chunks[i], float(scores[i])) for i in order[: min(k, len(index.chunks))]]


# -- persistence --------------------------------------------------------------
# Cache layout: magic, uint32 dim, uint32 count, count*dim float64 vectors
# (row-major little-endian), uint64 table length, JSON chunk table.


def content_key(raw_text: str) -> str:
    return hashlib.sha256(raw_text.encode("utf-8")).hexdigest()


def save_index(index: ChunkIndex, path: str | Path) -> None:
    table = json.dumps(
        [
            {
                "chunk_id": c.chunk_id,
                "first_line": c.line_span[0],
                "last_line": c.line_span[1],
                "token_count": c.token_count,
                "text": c.text,
            }
            for c in index.chunks
        ]
    ).encode("utf-8")
    matrix = np.ascontiguousarray(index.vectors, dtype="<f8")
    blob = (
        _MAGIC
        + struct.pack("<II", index.dim, len(index.chunks))
        + matrix.tobytes()
        + struct.pack("<Q", len(table))
        + table
    )
    Path(path).write_bytes(blob)


def load_index(path: str | Path) -> ChunkIndex:
    blob = Path(path).read_bytes()
    if blob[: len(_MAGIC)] != _MAGIC:
        raise ValueError(f"not an index cache file: {path}")
    offset = len(_MAGIC)
    dim, count = struct.unpack_from("<II", blob, offset)
    offset += 8
    matrix = np.frombuffer(blob, dtype="<f8", count=dim * count, offset=offset)
    matrix = matrix.reshape(count, dim).astype(np.float64)
    matrix.setflags(write=False)
    offset += dim * count * 8
    (table_len,) = struct.unpack_from("<Q", blob, offset)
    offset += 8
    rows = json.loads(blob[offset : offset + table_len].decode("utf-8"))
    chunks = tuple(
        Chunk(
            chunk_id=row["chunk_id"],
            line_span=(row["first_line"], row["last_line"]),
            text=row["text"],
            token_count=row["token_count"],
        )
        for row in rows
    )
    return ChunkIndex(chunks=chunks, vectors=matrix, dim=dim)


def index_log(
    raw_text: str,
    gateway: ModelGateway,
    chunk_budget: int = DEFAULT_CHUNK_BUDGET,
    cache_dir: str | Path | None = None,
) -> ChunkIndex:
    """Chunk and embed raw_text, reusing a cached index when the same content
    was indexed before."""
    cache_path: Path | None = None
    if cache_dir:
        cache_path = Path(cache_dir) / f"{content_key(raw_text)}.idx"
        if cache_path.is_file():
            return load_index(cache_path)
    index = build_index(chunk_log(raw_text, chunk_budget), gateway)
    if cache_path is not None:
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        save_index(index, cache_path)
    return index
