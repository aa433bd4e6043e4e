"""Command-line interface.

`analyze open` records the file (and detected category) in a small state file
so follow-up `analyze ask` / `analyze events` invocations can rebuild the
session without re-running the recognizer; embeddings are reused through the
index cache when one is configured.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .config import load_settings
from .errors import LogChatError
from .evaluation import load_manifest, report_json, run_benchmark, scores_csv
from .gateway import ModelGateway
from .indexing import content_key
from .orchestrator import answer_query, open_session
from .parsing import CATEGORIES, export_templates_csv
from .search import SearchResult
from .service import create_app


def _state_path() -> Path:
    root = os.environ.get("LOGCHAT_STATE_DIR") or os.path.join(
        os.path.expanduser("~"), ".local", "state", "logchat"
    )
    return Path(root) / "session.json"


def _load_state() -> dict:
    path = _state_path()
    if not path.is_file():
        raise click.ClickException("no open session: run `logchat analyze open <file>` first")
    return json.loads(path.read_text(encoding="utf-8"))


def _rebuild_session(state: dict, gateway: ModelGateway):
    log_path = Path(state["path"])
    if not log_path.is_file():
        raise click.ClickException(f"log file moved or deleted: {log_path}")
    raw_text = log_path.read_text(encoding="utf-8", errors="replace")
    if content_key(raw_text) != state["content_hash"]:
        raise click.ClickException(
            f"log file changed since `analyze open`: {log_path}; re-open it"
        )
    return open_session(
        log_file_name=log_path.name,
        raw_text=raw_text,
        gateway=gateway,
        category_override=state["category"],
    )


@click.group()
def main() -> None:
    """Chat-driven log analysis."""


@main.group()
def analyze() -> None:
    """Open a log and ask questions about it."""


@analyze.command("open")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--category", type=click.Choice(CATEGORIES), default=None,
              help="Skip type detection and use this category.")
def analyze_open(file: str, category: str | None) -> None:
    """Index and parse FILE, making it the active session."""
    gateway = ModelGateway()
    raw_text = Path(file).read_text(encoding="utf-8", errors="replace")
    try:
        session = open_session(
            log_file_name=Path(file).name,
            raw_text=raw_text,
            gateway=gateway,
            category_override=category,
        )
    except LogChatError as exc:
        raise click.ClickException(str(exc))
    state = {
        "path": str(Path(file).resolve()),
        "category": session.category,
        "content_hash": session.content_hash,
    }
    path = _state_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(state, indent=2), encoding="utf-8")
    click.echo(f"opened {session.log_file_name}")
    click.echo(f"category: {session.category}")
    click.echo(f"lines: {len(session.raw_lines)}")
    click.echo(f"templates: {len(session.templates)}")
    click.echo(f"chunks: {len(session.index.chunks)}")


@analyze.command("ask")
@click.argument("question")
def analyze_ask(question: str) -> None:
    """Ask QUESTION about the active session's log."""
    gateway = ModelGateway()
    state = _load_state()
    try:
        session = _rebuild_session(state, gateway)
        answer = answer_query(session, question, gateway)
    except LogChatError as exc:
        raise click.ClickException(str(exc))
    route = answer.route
    label = route.tier.value.lower()
    if route.tool is not None:
        label += f" / {route.tool.value.lower()}"
    click.echo(answer.text)
    click.echo("")
    click.echo(f"[route: {label}]")
    if isinstance(answer.references, SearchResult):
        ref = answer.references
        shown = " (trimmed)" if ref.truncated else ""
        click.echo(f"[references: {ref.total} matching lines{shown}]")
        for line_id, text in ref.matches[:10]:
            click.echo(f"  {line_id}: {text}")
        if ref.shown > 10:
            click.echo(f"  ... {ref.shown - 10} more")
    elif answer.references is not None:
        click.echo(f"[references: {len(answer.references)} chunks]")
        for chunk, score in answer.references:
            first, last = chunk.line_span
            click.echo(f"  chunk {chunk.chunk_id} (lines {first}-{last}, score {score:.3f})")


@analyze.command("events")
def analyze_events() -> None:
    """Print the active session's event templates as CSV."""
    gateway = ModelGateway()
    state = _load_state()
    try:
        session = _rebuild_session(state, gateway)
    except LogChatError as exc:
        raise click.ClickException(str(exc))
    click.echo(export_templates_csv(session.templates), nl=False)


@main.command()
@click.option("--port", default=8000, show_default=True, help="Port to listen on.")
@click.option("--host", default="127.0.0.1", show_default=True, help="Bind address.")
def serve(port: int, host: str) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)


@main.group("eval")
def eval_group() -> None:
    """Score generated answers against references."""


@eval_group.command("run")
@click.option("--manifest", "manifest_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--live", is_flag=True, default=False,
              help="Generate missing answers through the configured backend.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
def eval_run(manifest_path: str, live: bool, out_dir: str) -> None:
    """Score every case in the manifest; write scores.csv and report.json."""
    try:
        manifest = load_manifest(manifest_path)
    except LogChatError as exc:
        raise click.ClickException(str(exc))
    session = None
    gateway = None
    if live:
        if not manifest.log_file:
            raise click.ClickException("--live needs a log_file entry in the manifest")
        gateway = ModelGateway()
        log_path = Path(manifest_path).parent / manifest.log_file
        raw_text = log_path.read_text(encoding="utf-8", errors="replace")
        session = open_session(
            log_file_name=log_path.name,
            raw_text=raw_text,
            gateway=gateway,
            category_override=manifest.category,
        )
    try:
        rows, means = run_benchmark(manifest, session=session, gateway=gateway)
    except LogChatError as exc:
        raise click.ClickException(str(exc))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "scores.csv").write_text(scores_csv(rows), encoding="utf-8")
    (out / "report.json").write_text(report_json(rows, means), encoding="utf-8")
    click.echo(f"scored {len(rows)} cases across {len(means)} tasks -> {out}")
    for task, stats in means.items():
        click.echo(
            f"  {task}: cosine {stats['cosine']:.3f}, rouge1_f1 {stats['rouge1_f1']:.3f}"
        )


if __name__ == "__main__":
    sys.exit(main())
