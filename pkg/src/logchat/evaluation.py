"""Answer-quality metrics and the batch scoring runner.

Both metrics share one tokenization: lowercase, then ASCII alphanumeric runs
(everything else is a separator). Cosine works on raw term-frequency vectors,
not TF-IDF and not embeddings, so scores stay interpretable; the trade-off is
recorded in the README.
"""

from __future__ import annotations

import csv
import io
import json
import re
from collections import Counter
from dataclasses import asdict, dataclass
from math import sqrt
from pathlib import Path
from typing import Sequence

from .errors import EmptyTextError, ManifestError

TASKS = (
    "summarization",
    "pattern_extraction",
    "log_anomaly_detection",
    "root_cause_analysis",
    "predictive_failure_analysis",
    "log_understanding_and_interpretation",
    "log_filtering_and_searching",
)

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


def cosine_similarity(text_a: str, text_b: str) -> float:
    """Term-frequency cosine over the union vocabulary, in [0, 1]."""
    tokens_a = tokenize(text_a)
    tokens_b = tokenize(text_b)
    if not tokens_a or not tokens_b:
        raise EmptyTextError("both texts must contain at least one token")
    counts_a = Counter(tokens_a)
    counts_b = Counter(tokens_b)
    dot = sum(count * counts_b.get(term, 0) for term, count in counts_a.items())
    norm_sq_a = sum(c * c for c in counts_a.values())
    norm_sq_b = sum(c * c for c in counts_b.values())
    if norm_sq_a == 0 or norm_sq_b == 0:
        return 0.0
    # sqrt of the integer product, not a product of two sqrts: identical texts
    # score exactly 1.0 and perfect-square cases stay exact
    return dot / sqrt(norm_sq_a * norm_sq_b)


def rouge1(candidate: str, reference: str) -> tuple[float, float, float]:
    """Clipped unigram overlap: precision over the candidate, recall over the
    reference, F1 = 2PR/(P+R) (0 when both are 0). Swapping the arguments
    swaps precision and recall."""
    cand = tokenize(candidate)
    ref = tokenize(reference)
    if not cand or not ref:
        raise EmptyTextError("both texts must contain at least one token")
    cand_counts = Counter(cand)
    ref_counts = Counter(ref)
    overlap = sum(min(count, ref_counts.get(term, 0)) for term, count in cand_counts.items())
    precision = overlap / len(cand)
    recall = overlap / len(ref)
    if precision + recall == 0.0:
        return 0.0, 0.0, 0.0
    f1 = 2 * precision * recall / (precision + recall)
    return precision, recall, f1


@dataclass(frozen=True)
class EvalCase:
    task: str
    question: str
    reference_answer: str
    generated_answer: str

    def __post_init__(self) -> None:
        for name in ("task", "question", "reference_answer", "generated_answer"):
            if not getattr(self, name):
                raise ValueError(f"EvalCase.{name} must be non-empty")


@dataclass(frozen=True)
class ScoreRow:
    task: str
    cosine: float
    rouge1_precision: float
    rouge1_recall: float
    rouge1_f1: float


@dataclass(frozen=True)
class Manifest:
    """One benchmark document: questions with references, optionally with
    pre-generated answers; log_file/category say what to upload for a live run."""

    cases: tuple[dict, ...]
    log_file: str | None = None
    category: str | None = None


def load_manifest(path: str | Path) -> Manifest:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest is not valid JSON: {exc}")
    if not isinstance(doc, dict) or not isinstance(doc.get("cases"), list):
        raise ManifestError('manifest must be an object with a "cases" array')
    cases: list[dict] = []
    for i, raw in enumerate(doc["cases"]):
        if not isinstance(raw, dict):
            raise ManifestError("case must be an object", case_index=i)
        for field in ("task", "question", "reference_answer"):
            value = raw.get(field)
            if not isinstance(value, str) or not value:
                raise ManifestError(f"missing or empty {field}", case_index=i, field=field)
        if raw["task"] not in TASKS:
            raise ManifestError(
                f"unknown task {raw['task']!r}", case_index=i, field="task"
            )
        generated = raw.get("generated_answer")
        if generated is not None and (not isinstance(generated, str) or not generated):
            raise ManifestError(
                "generated_answer, when present, must be a non-empty string",
                case_index=i,
                field="generated_answer",
            )
        cases.append(dict(raw))
    log_file = doc.get("log_file")
    category = doc.get("category")
    return Manifest(cases=tuple(cases), log_file=log_file, category=category)


def run_benchmark(
    manifest: Manifest,
    session=None,
    gateway=None,
) -> tuple[list[ScoreRow], dict[str, dict[str, float]]]:
    """Score every case; cases without a canned generated_answer are answered
    live through the session. Returns (rows, per-task means)."""
    from .orchestrator import answer_query

    rows: list[ScoreRow] = []
    for i, raw in enumerate(manifest.cases):
        generated = raw.get("generated_answer")
        if generated is None:
            if session is None or gateway is None:
                raise ManifestError(
                    "case has no generated_answer and no live session was provided",
                    case_index=i,
                    field="generated_answer",
                )
            generated = answer_query(session, raw["question"], gateway).text
        case = EvalCase(
            task=raw["task"],
            question=raw["question"],
            reference_answer=raw["reference_answer"],
            generated_answer=generated,
        )
        cos = cosine_similarity(case.generated_answer, case.reference_answer)
        precision, recall, f1 = rouge1(case.generated_answer, case.reference_answer)
        rows.append(
            ScoreRow(
                task=case.task,
                cosine=cos,
                rouge1_precision=precision,
                rouge1_recall=recall,
                rouge1_f1=f1,
            )
        )
    return rows, task_means(rows)


def task_means(rows: Sequence[ScoreRow]) -> dict[str, dict[str, float]]:
    means: dict[str, dict[str, float]] = {}
    for task in sorted({row.task for row in rows}):
        group = [row for row in rows if row.task == task]
        n = len(group)
        means[task] = {
            "cosine": sum(r.cosine for r in group) / n,
            "rouge1_precision": sum(r.rouge1_precision for r in group) / n,
            "rouge1_recall": sum(r.rouge1_recall for r in group) / n,
            "rouge1_f1": sum(r.rouge1_f1 for r in group) / n,
            "cases": float(n),
        }
    return means


def scores_csv(rows: Sequence[ScoreRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["task", "cosine", "rouge1_precision", "rouge1_recall", "rouge1_f1"])
    for row in rows:
        writer.writerow(
            [row.task, row.cosine, row.rouge1_precision, row.rouge1_recall, row.rouge1_f1]
        )
    return buffer.getvalue()


def report_json(rows: Sequence[ScoreRow], means: dict[str, dict[str, float]]) -> str:
    return json.dumps(
        {"rows": [asdict(row) for row in rows], "task_means": means},
        indent=2,
        sort_keys=True,
    )
