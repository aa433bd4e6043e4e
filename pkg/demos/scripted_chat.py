#!/usr/bin/env python3
"""A full chat session against a scripted model backend.

The gateway answers from a plain-text rules file instead of HTTP, which
makes the whole pipeline runnable offline: log type recognition, the
two-level router, the search tools, and answer generation. Each block of
the script is `match: <substring or re:regex>`, reply lines, then `---`.
Rules are tried top to bottom and the first match wins, so the specific
routing rules sit above the catch-alls.
"""

from logchat.config import Settings
from logchat.gateway import ModelGateway, parse_mock_script
from logchat.orchestrator import answer_query, open_session
from logchat.search import SearchResult

LOG_TEXT = """\
Jun 14 15:16:01 combo sshd(pam_unix)[19939]: authentication failure; logname= uid=0
Jun 14 15:16:02 combo sshd(pam_unix)[19937]: check pass; user unknown
Jun 15 02:04:59 combo kernel: audit: initializing netlink socket (disabled)
Jun 15 02:04:59 combo sshd(pam_unix)[20882]: authentication failure; logname= uid=0
Jun 15 04:06:18 combo su(pam_unix)[21416]: session opened for user cyrus by (uid=0)
Jun 15 04:06:19 combo su(pam_unix)[21416]: session closed for user cyrus
"""

# One rule per routing decision, keyed on a stage marker plus the question,
# then one rule per generation prompt keyed on the stage marker alone.
SCRIPT = r"""match: categorizing a provided log line
{"category": "Linux"}
---
match: re:'keyword', 'event', or 'se'[\s\S]*which lines
{"choice": "keyword", "keywords": ["authentication"]}
---
match: re:'keyword', 'event', or 'se'[\s\S]*how often
{"choice": "event", "events": ["Event1"]}
---
match: re:'keyword', 'event', or 'se'[\s\S]*audit socket
{"choice": "se"}
---
match: re:'all', 'partial', or 'general'[\s\S]*summarize the whole log
{"choice": "all"}
---
match: re:'all', 'partial', or 'general'[\s\S]*what is pam_unix
{"choice": "general"}
---
match: 'all', 'partial', or 'general'
{"choice": "partial"}
---
match: were matched by keywords:
Two sshd lines report an authentication failure for uid 0.
---
match: were matched by events:
The authentication failure template fired twice, both from sshd.
---
match: All the events in this log file
Mostly sshd auth failures plus one su session open/close pair.
---
match: ---------------------
The kernel initialized the audit netlink socket in a disabled state.
---
default:
pam_unix is the PAM module that checks passwords against /etc/shadow.
---
"""

QUESTIONS = [
    "summarize the whole log",
    "which lines mention authentication failure",
    "how often did Event1 fire",
    "what happened around the audit socket",
    "what is pam_unix",
]


def describe_references(refs):
    if refs is None:
        return "none"
    if isinstance(refs, SearchResult):
        return f"{refs.total} matching lines" + (" (truncated)" if refs.truncated else "")
    return f"{len(refs)} retrieved chunks"


def main():
    settings = Settings(
        api_base="", api_key="", mock_script="", cache_dir="",
        temperature=0.0, chunk_tokens=24, max_lines=50,
    )
    gateway = ModelGateway(settings=settings, mock=parse_mock_script(SCRIPT))

    session = open_session("demo.log", LOG_TEXT, gateway, settings=settings)
    print(f"Opened {session.log_file_name}: category={session.category}, "
          f"{len(session.raw_lines)} lines, {len(session.templates)} templates")
    for t in session.templates:
        print(f"  {t.event_id:8s} x{t.occurrences}  {t.template}")

    for question in QUESTIONS:
        answer = answer_query(session, question, gateway, settings=settings)
        route = answer.route
        tool = route.tool.value if route.tool else "-"
        print("\n" + "=" * 60)
        print(f"Q: {question}")
        print(f"   route: {route.tier.value} / {tool}  prompt: {answer.prompt_kind}")
        print(f"   references: {describe_references(answer.references)}")
        print(f"A: {answer.text}")


if __name__ == "__main__":
    main()
