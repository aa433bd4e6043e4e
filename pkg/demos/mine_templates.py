#!/usr/bin/env python3
"""Mine event templates from a small syslog snippet.

Walks through the whole parsing path: header split, masking, clustering,
and the two CSV exports. Runs offline, no backend needed.
"""

from logchat.parsing.drain import (
    DrainConfig,
    export_structured_csv,
    export_templates_csv,
    mask_content,
    parse_lines,
    preprocess_line,
    seq_dist,
    split_line,
)

SAMPLE_LOG = [
    "Jun 14 15:16:01 combo sshd(pam_unix)[19939]: authentication failure; logname= uid=0",
    "Jun 14 15:16:02 combo sshd(pam_unix)[19937]: check pass; user unknown",
    "Jun 15 02:04:59 combo kernel: audit: initializing netlink socket (disabled)",
    "Jun 15 02:04:59 combo sshd(pam_unix)[20882]: authentication failure; logname= uid=0",
    "Jun 15 04:06:18 combo su(pam_unix)[21416]: session opened for user cyrus by (uid=0)",
    "Jun 15 04:06:19 combo su(pam_unix)[21416]: session closed for user cyrus",
    "Jun 15 04:12:42 combo su(pam_unix)[22644]: session opened for user news by (uid=0)",
]

CONFIG = DrainConfig(
    category="Linux",
    log_format="<Month> <Date> <Time> <Host> <Component>: <Content>",
    mask_regexes=(r"\d+",),
    st=0.5,
    depth=4,
    max_children=100,
)


def main():
    print("Template mining walkthrough")
    print("=" * 60)

    # Step 1: split one line into header fields and free-text content
    header, content = split_line(SAMPLE_LOG[0], CONFIG)
    print("\nHeader fields of line 1:")
    for name, value in header.items():
        print(f"  {name:10s} {value}")
    print(f"Content: {content}")

    # Step 2: masking replaces volatile substrings before clustering
    tokens = mask_content(content, CONFIG)
    print(f"\nMasked tokens: {tokens}")

    # preprocess_line does both steps at once
    _, same_tokens = preprocess_line(SAMPLE_LOG[0], CONFIG)
    assert same_tokens == tokens

    # Step 3: similarity between token sequences of equal length.
    # Wildcard positions never count as matches but still divide the score.
    a = ["session", "opened", "for", "user", "<*>"]
    b = ["session", "opened", "for", "user", "news"]
    sim, wildcards = seq_dist(a, b)
    print(f"\nseq_dist({a}, {b})")
    print(f"  similarity={sim:.3f} wildcards={wildcards}")

    # Step 4: cluster the whole file
    structured, templates = parse_lines(SAMPLE_LOG, CONFIG)
    print(f"\nMined {len(templates)} templates from {len(SAMPLE_LOG)} lines:")
    for t in templates:
        print(f"  {t.event_id:8s} x{t.occurrences}  {t.template}")

    # every line belongs to exactly one event
    total = sum(t.occurrences for t in templates)
    assert total == len(SAMPLE_LOG)

    print("\nPer-line assignment:")
    for row in structured.rows:
        print(f"  line {row.line_id}: {row.event_id}  {row.content[:50]}")

    print("\nTemplates CSV:")
    print(export_templates_csv(templates))
    print("Structured CSV (first 3 rows):")
    print("\n".join(export_structured_csv(structured).splitlines()[:4]))


if __name__ == "__main__":
    main()
