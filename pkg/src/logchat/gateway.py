"""Chat-completion and embedding access.

Three backends behind one interface:
  * an OpenAI-style HTTP endpoint (chat + embeddings) when an api_base is
    configured,
  * a scripted mock for chat, for deterministic offline runs,
  * a hashing embedder for embeddings when offline.

Mock scripts are plain text. A rule starts with a "match:" line, its reply is
every following line verbatim, and a line of exactly "---" ends it:

    match: route this question
    {"choice": "all"}
    ---
    match: re:how many .* errors
    There were 3.
    ---
    default:
    I do not know.
    ---

The first matching rule wins. A matcher starting with "re:" is a regex
(searched, not anchored); anything else is a plain substring test. Blank
lines and "#" comments are allowed between rules, never inside a reply.
"""

from __future__ import annotations

import hashlib
import re
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import httpx
import numpy as np

from .config import Settings, load_settings
from .errors import DimensionMismatchError, GatewayError

HASH_EMBED_DIM = 256


@dataclass(frozen=True)
class ChatRequest:
    """One chat-completion call: system framing plus the stage prompt."""

    system_text: str
    user_text: str
    temperature: float = 0.7
    max_tokens: int | None = None
    model_name: str = ""

    def __post_init__(self) -> None:
        if not self.user_text:
            raise ValueError("user_text must be non-empty")
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError(f"temperature must be within [0, 2], got {self.temperature}")


@dataclass(frozen=True)
class MockRule:
    matcher: str
    reply: str

    def matches(self, prompt: str) -> bool:
        if self.matcher.startswith("re:"):
            return re.search(self.matcher[3:], prompt) is not None
        return self.matcher in prompt


@dataclass(frozen=True)
class MockScript:
    rules: tuple[MockRule, ...]
    default_reply: str = ""

    def reply_for(self, prompt: str) -> str:
        for rule in self.rules:
            if rule.matches(prompt):
                return rule.reply
        return self.default_reply


def parse_mock_script(text: str) -> MockScript:
    rules: list[MockRule] = []
    default_reply = ""
    matcher: str | None = None
    is_default = False
    reply_lines: list[str] | None = None
    for line in text.split("\n"):
        if reply_lines is None:
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if line.startswith("match:"):
                matcher = line[len("match:") :].strip()
                is_default = False
                reply_lines = []
            elif line.strip() == "default:":
                is_default = True
                reply_lines = []
            else:
                raise ValueError(f"unexpected line outside a rule: {line!r}")
        elif line == "---":
            reply = "\n".join(reply_lines)
            if is_default:
                default_reply = reply
            else:
                assert matcher is not None
                rules.append(MockRule(matcher=matcher, reply=reply))
            reply_lines = None
        else:
            reply_lines.append(line)
    if reply_lines is not None:
        raise ValueError("unterminated rule: missing closing ---")
    return MockScript(rules=tuple(rules), default_reply=default_reply)


def load_mock_script(path: str | Path) -> MockScript:
    return parse_mock_script(Path(path).read_text(encoding="utf-8"))


def hash_embed(texts: Sequence[str], dim: int = HASH_EMBED_DIM) -> list[np.ndarray]:
    """Deterministic offline embeddings via signed feature hashing.

    md5 keeps the mapping stable across processes and platforms (the builtin
    hash() is salted per process). Vectors come back unit-L2-normalized; a
    text with no tokens gets a fixed basis vector so the norm contract holds.
    """
    vectors: list[np.ndarray] = []
    for text in texts:
        vec = np.zeros(dim, dtype=np.float64)
        for word in text.lower().split():
            digest = hashlib.md5(word.encode("utf-8")).digest()
            index = int.from_bytes(digest[:4], "little") % dim
            sign = 1.0 if digest[4] % 2 == 0 else -1.0
            vec[index] += sign
        norm = float(np.linalg.norm(vec))
        if norm > 0.0:
            vec /= norm
        else:
            vec[0] = 1.0
        vectors.append(vec)
    return vectors


class ModelGateway:
    """Shareable across sessions; every call is independent."""

    RATE_LIMIT_ATTEMPTS = 3

    def __init__(
        self,
        settings: Settings | None = None,
        mock: MockScript | None = None,
        backoff_base: float = 1.0,
    ) -> None:
        self.settings = settings or load_settings()
        if mock is None and self.settings.mock_script:
            mock = load_mock_script(self.settings.mock_script)
        self.mock = mock
        self.backoff_base = backoff_base
        self._client: httpx.Client | None = None

    # -- chat ---------------------------------------------------------------

    def chat_complete(self, request: ChatRequest) -> str:
        if self.mock is not None:
            return self.mock.reply_for(request.user_text)
        if not self.settings.api_base:
            raise GatewayError("network", "no backend configured: set an api_base or a mock script")
        payload: dict = {
            "model": request.model_name or self.settings.chat_model,
            "messages": [
                {"role": "system", "content": request.system_text},
                {"role": "user", "content": request.user_text},
            ],
            "temperature": request.temperature,
        }
        if request.max_tokens is not None:
            payload["max_tokens"] = request.max_tokens
        data = self._post_json("/chat/completions", payload, self.settings.chat_timeout)
        try:
            text = data["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError):
            raise GatewayError("malformed_response", "reply lacks choices[0].message.content")
        if not isinstance(text, str):
            raise GatewayError("malformed_response", "assistant content is not text")
        return text

    # -- embeddings ---------------------------------------------------------

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]:
        if not texts:
            raise ValueError("texts must be non-empty")
        if not self.settings.api_base:
            return hash_embed(texts)
        payload = {"model": self.settings.embed_model, "input": list(texts)}
        data = self._post_json("/embeddings", payload, self.settings.embed_timeout)
        try:
            items = sorted(data["data"], key=lambda item: item["index"])
            vectors = [np.asarray(item["embedding"], dtype=np.float64) for item in items]
        except (KeyError, TypeError):
            raise GatewayError("malformed_response", "embedding reply lacks data[].embedding")
        if len(vectors) != len(texts):
            raise GatewayError(
                "malformed_response",
                f"expected {len(texts)} embeddings, got {len(vectors)}",
            )
        dims = {v.shape for v in vectors}
        if len(dims) > 1:
            raise DimensionMismatchError(f"inconsistent embedding dimensions: {sorted(dims)}")
        for vec in vectors:
            if not np.all(np.isfinite(vec)):
                raise GatewayError("malformed_response", "non-finite embedding component")
        return vectors

    # -- transport ----------------------------------------------------------

    def _post_json(self, path: str, payload: dict, timeout: float) -> dict:
        client = self._ensure_client()
        url = self.settings.api_base.rstrip("/") + path
        headers = {}
        if self.settings.api_key:
            headers["Authorization"] = f"Bearer {self.settings.api_key}"
        last_status = 0
        for attempt in range(self.RATE_LIMIT_ATTEMPTS):
            try:
                response = client.post(url, json=payload, headers=headers, timeout=timeout)
            except httpx.HTTPError as exc:
                # No body or key in the message: errors must never leak secrets.
                raise GatewayError("network", f"transport failure: {type(exc).__name__}")
            last_status = response.status_code
            if response.status_code == 429:
                if attempt < self.RATE_LIMIT_ATTEMPTS - 1:
                    time.sleep(self.backoff_base * (2**attempt))
                continue
            if response.status_code in (401, 403):
                raise GatewayError("auth", f"backend rejected credentials (HTTP {response.status_code})")
            if response.status_code >= 500:
                raise GatewayError("network", f"backend unavailable (HTTP {response.status_code})")
            if response.status_code >= 400:
                raise GatewayError("malformed_response", f"unexpected HTTP {response.status_code}")
            try:
                data = response.json()
            except ValueError:
                raise GatewayError("malformed_response", "backend returned non-JSON body")
            if not isinstance(data, dict):
                raise GatewayError("malformed_response", "backend returned non-object JSON")
            return data
        raise GatewayError("rate_limit", f"rate limited after {self.RATE_LIMIT_ATTEMPTS} attempts (HTTP {last_status})")

    def _ensure_client(self) -> httpx.Client:
        if self._client is None:
            self._client = httpx.Client()
        return self._client

    def close(self) -> None:
        if self._client is not None:
            self._client.close()
            self._client = None
