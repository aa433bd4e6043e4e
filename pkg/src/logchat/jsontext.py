"""Pull a JSON object out of free-form model output.

Models often wrap the requested JSON in preamble, code fences, or trailing
prose; the contract here is: first balanced {...} span that parses wins.
"""

from __future__ import annotations

import json


def extract_json_object(text: str) -> dict | None:
    """Return the first parseable JSON object embedded in text, else None."""
    start = text.find("{")
    while start != -1:
        depth = 0
        in_string = False
        escaped = False
        for i in range(start, len(text)):
            ch = text[i]
            if in_string:
                if escaped:
                    escaped = False
                elif ch == "\\":
                    escaped = True
                elif ch == '"':
                    in_string = False
                continue
            if ch == '"':
                in_string = True
            elif ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    candidate = text[start : i + 1]
                    try:
                        parsed = json.loads(candidate)
                    except json.JSONDecodeError:
                        break
                    if isinstance(parsed, dict):
                        return parsed
                    break
        start = text.find("{", start + 1)
    return None
