"""Stage prompt templates and their renderers.

Every template is kept as a module constant and rendered by plain string
substitution (never str.format, which would trip on the literal braces).
Renderers may only touch the substitution sites; the surrounding text is
contract and is pinned byte-for-byte by the test suite.

Trailing spaces inside some templates are intentional. Do not "clean" them.
"""

from __future__ import annotations

from typing import Iterable, Sequence

SYSTEM_TEXT = (
    "You are a Log Analyst. Your goal is to answer questions as accurately "
    "as possible based on the instructions and context provided."
)

# Raw single-string chat frame (llama-3 style). HTTP backends send SYSTEM_TEXT
# and the stage prompt as separate messages; this frame is the equivalent
# single-string rendering.
SYSTEM_FRAME_TEMPLATE = (
    "<|begin_of_text|><|start_header_id|>system<|end_header_id|> "
    "You are a Log Analyst. Your goal is to answer questions as accurately as possible "
    "based on the instructions and context provided."
    "<|eot_id|><|start_header_id|>user<|end_header_id|> "
    "{query_str}"
    "<|eot_id|><|start_header_id|>assistant<|end_header_id|>"
)

RECOGNIZER_TEMPLATE = (
    "You are a log expert tasked with categorizing a provided log line. The categories are: {categories}.\n"
    "Categorize the provided log lines into one of the categories:{categories}, assuming those logs share a single category.\n"
    'Return a JSON object with a single key "category" without any preamble, special characters, or explanation.\n'
    "Log:\n{log}"
)

ROUTE_LEVEL1_TEMPLATE = (
    "You are an expert at routing user questions to the 'all', 'partial', or 'general' stage.\n"
    "To answer the user's question, you must analyze how the question relates to the log content \n"
    "and decide whether to retrieve all, partial, or no logs from the log file.\n"
    "- Use 'all' for questions requiring the entire log file to answer. \n"
    "- Use 'partial' for questions requiring only a specific part or chunk of the log file to answer. \n"
    "- Use 'general' for questions that can be answered without needing to retrieve any logs. \n"
    "Return a JSON as plaintext with a single key 'choice' based on the question without any preamble, special characters, or explanation.\n"
    "Question to route: {question}"
)

ROUTE_LEVEL2_TEMPLATE = (
    "You are an expert at routing user questions to the 'keyword', 'event', or 'se' stage.\n"
    "Use 'keyword' if the question requires using a search tool to find relevant information. If the question does not have clear keywords, try using 'semantic' instead.\n"
    "- Use 'event' if the question is related to a specific event or log template in the log file.\n"
    "- Use 'semantic' if the question asks for specific information that can be retrieved from a vector database.\n"
    "Return a JSON as plaintext with a single key 'choice' based on the question without any preamble, special characters, or explanation. If 'keyword' is chosen, also return 'keywords' as a list.  If 'event' is chosen, also return 'events' as a list. \n"
    "Question to route: {question}"
)

ALL_EVENTS_TEMPLATE = (
    "Context information is below.\n"
    "Log file name {log_file_name}\n"
    "All the events in this log file, which is a CSV file, contain three columns: EventId,EventTemplate,Occurrences\n"
    "{templates[1:]}\n"
    "The first line of the log file: {log_lines[0].strip()}\n"
    "The Last line of the log file: {log_lines[-1].strip()}\n"
    "The log file contains {len(log_lines)} lines\n"
    "There are {len(templates)} log events in the log file.\n"
    "The log period can be indicated in the first and last lines of the log file.\n"
    "Given the context information, answer the query.\n"
    "Query: {question}\n"
    "Answer:"
)

RETRIEVE_TEMPLATE = (
    " Context information is below.\n"
    "---------------------\n"
    "{context_str}\n"
    "---------------------\n"
    "Given the context information and not prior knowledge, answer the query.\n"
    "Query: {query_str}\n"
    "Answer:"
)

# The "trimmed to" sentence is emitted only when the search result actually
# was truncated; KEYWORD_SEARCH_TRIM_LINE is spliced out otherwise.
KEYWORD_SEARCH_TEMPLATE = (
    "There are {len(search_result)} lines were matched by keywords: {keywords}.\n"
    "The context is too long, and it has been trimmed to {MAX_LINES} lines.\n"
    "Focus on the total number if the user asks a question about how many.\n"
    "Context: {search_result_max if search_result_modified else search_result}\n"
    "Question: {question}."
)

EVENT_SEARCH_TEMPLATE = (
    "There are {len(search_result)} lines were matched by events: {events}.\n"
    "The context is too long, and it has been trimmed to {MAX_LINES} lines.\n"
    "All relevant events are: {filtered_df.values.tolist()}\n"
    "Focus on the total number if the user asks a question about how many.\n"
    "Context: {search_result_max if search_result_modified else search_result}\n"
    "Question: {question}."
)

TRIM_LINE = "The context is too long, and it has been trimmed to {MAX_LINES} lines.\n"


def render_system_frame(query_str: str) -> str:
    return SYSTEM_FRAME_TEMPLATE.replace("{query_str}", query_str)


def format_category_list(categories: Sequence[str]) -> str:
    """Render the registry the way a Python list interpolates into an f-string."""
    return "[" + ", ".join(f"'{c}'" for c in categories) + "]"


def render_recognizer_prompt(categories: Sequence[str], sample_lines: Sequence[str]) -> str:
    return RECOGNIZER_TEMPLATE.replace(
        "{categories}", format_category_list(categories)
    ).replace("{log}", "\n".join(sample_lines))


def render_route_level1_prompt(question: str) -> str:
    return ROUTE_LEVEL1_TEMPLATE.replace("{question}", question)


def render_route_level2_prompt(question: str) -> str:
    return ROUTE_LEVEL2_TEMPLATE.replace("{question}", question)


def render_all_events_prompt(
    log_file_name: str,
    templates_csv: str,
    first_line: str,
    last_line: str,
    line_count: int,
    template_count: int,
    question: str,
) -> str:
    """Render the whole-log stage prompt.

    templates_csv is the full export including its header row; the header is
    dropped here so the prompt carries data rows only, and template_count is
    the number of data rows.
    """
    csv_lines = templates_csv.splitlines()
    body = "\n".join(csv_lines[1:])
    return (
        ALL_EVENTS_TEMPLATE.replace("{log_file_name}", log_file_name)
        .replace("{templates[1:]}", body)
        .replace("{log_lines[0].strip()}", first_line.strip())
        .replace("{log_lines[-1].strip()}", last_line.strip())
        .replace("{len(log_lines)}", str(line_count))
        .replace("{len(templates)}", str(template_count))
        .replace("{question}", question)
    )


def render_retrieve_prompt(chunk_texts: Iterable[str], query: str) -> str:
    return RETRIEVE_TEMPLATE.replace("{context_str}", "\n\n".join(chunk_texts)).replace(
        "{query_str}", query
    )


def format_string_list(items: Sequence[str]) -> str:
    return "[" + ", ".join(f"'{s}'" for s in items) + "]"


def _substitute_search_common(
    template: str,
    total: int,
    shown_lines: Sequence[str],
    truncated: bool,
    max_lines: int,
    question: str,
) -> str:
    if not truncated:
        template = template.replace(TRIM_LINE, "")
    return (
        template.replace("{len(search_result)}", str(total))
        .replace("{MAX_LINES}", str(max_lines))
        .replace(
            "{search_result_max if search_result_modified else search_result}",
            "\n".join(shown_lines),
        )
        .replace("{question}", question)
    )


def render_keyword_search_prompt(
    total: int,
    shown_lines: Sequence[str],
    truncated: bool,
    keywords: Sequence[str],
    max_lines: int,
    question: str,
) -> str:
    template = KEYWORD_SEARCH_TEMPLATE.replace("{keywords}", format_string_list(keywords))
    return _substitute_search_common(template, total, shown_lines, truncated, max_lines, question)


def render_event_search_prompt(
    total: int,
    shown_lines: Sequence[str],
    truncated: bool,
    events: Sequence[str],
    template_rows: Sequence[Sequence[object]],
    max_lines: int,
    question: str,
) -> str:
    """template_rows are [event_id, template, occurrences] triples."""
    rows = "[" + ", ".join("[" + ", ".join(repr(v) for v in row) + "]" for row in template_rows) + "]"
    template = EVENT_SEARCH_TEMPLATE.replace("{events}", format_string_list(events)).replace(
        "{filtered_df.values.tolist()}", rows
    )
    return _substitute_search_common(template, total, shown_lines, truncated, max_lines, question)
