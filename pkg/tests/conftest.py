"""Shared test fixtures: offline settings, scripted gateways, tiny logs."""

from __future__ import annotations

import pytest

from logchat.config import Settings
from logchat.gateway import MockRule, MockScript, ModelGateway


def make_settings(**overrides) -> Settings:
    """Settings pinned to offline defaults, immune to ambient env vars."""
    values = dict(
        api_base="",
        api_key="",
        chat_model="test-chat",
        embed_model="test-embed",
        temperature=0.7,
        chat_timeout=5.0,
        embed_timeout=5.0,
        max_lines=200,
        chunk_tokens=1024,
        mock_script="",
        cache_dir="",
    )
    values.update(overrides)
    return Settings(**values)


def make_gateway(rules: list[tuple[str, str]], default: str = "") -> ModelGateway:
    script = MockScript(
        rules=tuple(MockRule(matcher=m, reply=r) for m, r in rules),
        default_reply=default,
    )
    return ModelGateway(settings=make_settings(), mock=script)


# Markers present in each stage prompt, for mock-script matchers.
L1_MARKER = "'all', 'partial', or 'general'"
L2_MARKER = "'keyword', 'event', or 'se'"
SEARCH_MARKER = "were matched by keywords:"
EVENT_MARKER = "were matched by events:"
RETRIEVE_MARKER = "---------------------"
ALL_EVENT_MARKER = "All the events in this log file"
RECOGNIZER_MARKER = "categorizing a provided log line"

LINUX_LINES = [
    "Jun 14 15:16:01 combo sshd(pam_unix)[19939]: authentication failure; logname= uid=0",
    "Jun 14 15:16:02 combo sshd(pam_unix)[19937]: check pass; user unknown",
    "Jun 15 02:04:59 combo kernel: audit: initializing netlink socket (disabled)",
    "Jun 15 02:04:59 combo sshd(pam_unix)[20882]: authentication failure; logname= uid=0",
    "Jun 15 04:06:18 combo su(pam_unix)[21416]: session opened for user cyrus by (uid=0)",
    "Jun 15 04:06:19 combo su(pam_unix)[21416]: session closed for user cyrus",
]


@pytest.fixture
def linux_text() -> str:
    return "\n".join(LINUX_LINES) + "\n"


def session_rules(extra: list[tuple[str, str]] | None = None) -> list[tuple[str, str]]:
    """Baseline scripted replies for opening a session on the Linux fixture."""
    rules = [(RECOGNIZER_MARKER, '{"category":"Linux"}')]
    if extra:
        rules.extend(extra)
    return rules


@pytest.fixture
def offline_settings() -> Settings:
    return make_settings()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One explicit pass/fail line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" in nodeid:
                name = nodeid.split("::")[-1]
                lines.append((name, outcome.upper()))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, outcome in sorted(lines):
            terminalreporter.write_line(f"ACCEPTANCE {outcome}: {name}")
