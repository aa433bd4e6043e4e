#!/usr/bin/env python3
"""Score generated answers against references with both text metrics.

Builds a three-case manifest on disk, runs the benchmark over it, and
prints the per-case scores plus per-task means, the same artifacts the
command line `eval` subcommand writes as scores.csv and report.json.
"""

import json
import tempfile
from pathlib import Path

from logchat.evaluation import (
    cosine_similarity,
    load_manifest,
    rouge1,
    run_benchmark,
    scores_csv,
    task_means,
)

MANIFEST = {
    "cases": [
        {
            "task": "log_anomaly_detection",
            "question": "are there failed logins",
            "reference_answer": "two failed ssh logins from uid 0",
            "generated_answer": "there were two failed ssh logins from uid 0",
        },
        {
            "task": "log_anomaly_detection",
            "question": "any kernel trouble",
            "reference_answer": "no kernel errors were logged",
            "generated_answer": "the kernel log shows no errors",
        },
        {
            "task": "summarization",
            "question": "summarize the log",
            "reference_answer": "mostly ssh authentication failures",
            "generated_answer": "mostly ssh authentication failures",
        },
    ]
}


def main():
    # the metrics on their own
    c = cosine_similarity("two failed logins", "two failed logins today")
    p, r, f1 = rouge1("two failed logins", "two failed logins today")
    print(f"cosine = {c:.4f}")
    print(f"rouge1 precision={p:.4f} recall={r:.4f} f1={f1:.4f}")

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "manifest.json"
        path.write_text(json.dumps(MANIFEST), encoding="utf-8")
        manifest = load_manifest(path)
        rows, means = run_benchmark(manifest)

    print(f"\nScored {len(rows)} cases:")
    for row, case in zip(rows, manifest.cases):
        print(f"  [{row.task}] cosine={row.cosine:.4f} rouge1_f1={row.rouge1_f1:.4f}"
              f"  q: {case['question']}")

    print("\nPer-task means:")
    for task, task_mean in task_means(rows).items():
        print(f"  {task}: " + ", ".join(f"{k}={v:.4f}" for k, v in task_mean.items()))
    assert means == task_means(rows)

    print("\nCSV head:")
    print(scores_csv(rows).splitlines()[0])


if __name__ == "__main__":
    main()
