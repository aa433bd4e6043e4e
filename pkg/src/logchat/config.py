"""Runtime settings, sourced from environment variables.

Everything here is deployment wiring (endpoints, model names, limits); no
setting changes analysis semantics except through the documented knobs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    return default if raw is None or raw == "" else float(raw)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return default if raw is None or raw == "" else int(raw)


@dataclass
class Settings:
    """Process-wide configuration snapshot.

    Attributes:
        api_base: Base URL of the OpenAI-style backend (chat + embeddings).
            Empty means offline: chat needs a mock script, embeddings fall
            back to the deterministic hash embedder.
        api_key: Bearer token for the backend. Never logged.
        chat_model: Model name sent with chat-completion calls.
        embed_model: Model name sent with embedding calls.
        temperature: Sampling temperature for every chat call (callers may
            override per call).
        chat_timeout / embed_timeout: Per-call HTTP timeouts in seconds.
        max_lines: Cap on search-result lines injected into a prompt.
        chunk_tokens: Whitespace-token budget per index chunk.
        mock_script: Path to a plain-text mock rules file; when set the
            gateway answers from the script instead of HTTP.
        cache_dir: Directory for persisted chunk indexes, keyed by log
            content hash. Empty disables caching.
    """

    api_base: str = field(default_factory=lambda: os.environ.get("LOGCHAT_API_BASE", ""))
    api_key: str = field(default_factory=lambda: os.environ.get("LOGCHAT_API_KEY", ""))
    chat_model: str = field(
        default_factory=lambda: os.environ.get("LOGCHAT_CHAT_MODEL", "llama-3.1-70b-versatile")
    )
    embed_model: str = field(
        default_factory=lambda: os.environ.get("LOGCHAT_EMBED_MODEL", "bge-base-en-v1.5")
    )
    temperature: float = field(default_factory=lambda: _env_float("LOGCHAT_TEMPERATURE", 0.7))
    chat_timeout: float = field(default_factory=lambda: _env_float("LOGCHAT_CHAT_TIMEOUT", 60.0))
    embed_timeout: float = field(default_factory=lambda: _env_float("LOGCHAT_EMBED_TIMEOUT", 30.0))
    max_lines: int = field(default_factory=lambda: _env_int("LOGCHAT_MAX_LINES", 200))
    chunk_tokens: int = field(default_factory=lambda: _env_int("LOGCHAT_CHUNK_TOKENS", 1024))
    mock_script: str = field(default_factory=lambda: os.environ.get("LOGCHAT_MOCK_SCRIPT", ""))
    cache_dir: str = field(default_factory=lambda: os.environ.get("LOGCHAT_CACHE_DIR", ""))


def load_settings() -> Settings:
    """Read a fresh Settings snapshot from the current environment."""
    return Settings()
