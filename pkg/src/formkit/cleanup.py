"""Post-processing of raw autoregressive model output.

Autoregressive decoders degenerate into repeating the same span; we
collapse any sequence of at least `min_period` characters repeated
consecutively at least `min_reps` times down to a single copy.  Model
output also frequently isn't valid JSON, so repair_json applies a series
of rules, favoring a simple, less structured result, until the text
parses as a form parse.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import form_tree
from .form_tree import MalformedParse


@dataclass(frozen=True)
class CleanupConfig:
    min_period: int = 8
    min_reps: int = 5


@dataclass
class RepairLog:
    entries: list[tuple[str, int, str]] = field(default_factory=list)

    def add(self, rule: str, offset: int, description: str):
        self.entries.append((rule, offset, description))

    def __bool__(self):
        return bool(self.entries)

    def __len__(self):
        return len(self.entries)


def collapse_repeats(text: str, cfg: CleanupConfig = CleanupConfig()) -> str:
    """Collapse qualifying degenerate runs to their first copy.

    Earliest offset wins; at an offset the smallest qualifying period
    wins.  Scanning resumes after the kept copy; the whole scan iterates
    to a fixed point.  Idempotent; never grows the string.
    """
    while True:
        collapsed = _collapse_scan(text, cfg)
        if collapsed == text:
            return text
        text = collapsed


def _collapse_scan(s: str, cfg: CleanupConfig) -> str:
    out = []
    i = 0
    n = len(s)
    while i < n:
        hit = None
        max_p = (n - i) // cfg.min_reps
        for p in range(cfg.min_period, max_p + 1):
            unit = s[i : i + p]
            if s[i + p : i + 2 * p] != unit:
                continue
            reps = 2
            while s[i + reps * p : i + (reps + 1) * p] == unit:
                reps += 1
            if reps >= cfg.min_reps:
                hit = (p, reps)
                break
        if hit is None:
            out.append(s[i])
            i += 1
        else:
            p, reps = hit
            out.append(s[i : i + p])
            i += reps * p
    return "".join(out)


# ---------------------------------------------------------------------------
# JSON repair

_OPEN = {"{": "}", "[": "]"}
_CLOSE = {"}", "]"}
_MAX_FIXES = 500


def repair_json(text: str) -> tuple[str, RepairLog]:
    """Repair raw output into text that parses under form_tree.parse_json.

    Total function: every applied rule is logged and the worst case
    returns '[]'.  Idempotent on its own output (valid input passes
    through untouched with an empty log).
    """
    log = RepairLog()
    s = _trim_leading(text, log)
    if s is None:
        return "[]", log
    for _ in range(_MAX_FIXES):
        try:
            json.loads(s)
            break
        except json.JSONDecodeError as e:
            fixed = _fix_once(s, e, log)
            if fixed is None or fixed == s:
                s = _truncate_to_complete(s, log)
                break
            s = fixed
    try:
        data = json.loads(s)
    except json.JSONDecodeError:
        log.add("give_up", 0, "unrepairable; emitting empty parse")
        return "[]", log
    return _coerce_schema(s, data, log)


def _trim_leading(text: str, log: RepairLog) -> str | None:
    starts = [i for i in (text.find("{"), text.find("[")) if i >= 0]
    if not starts:
        if text.strip():
            log.add("trim", 0, "no JSON found")
        return None
    i = min(starts)
    if text[:i].strip():
        log.add("trim", 0, f"dropped {i} leading characters")
    return text[i:].strip()


def _fix_once(s: str, e: json.JSONDecodeError, log: RepairLog) -> str | None:
    msg, pos = e.msg, e.pos
    if msg.startswith("Extra data"):
        log.add("trim", pos, "dropped trailing characters")
        return s[:pos].rstrip()
    if msg.startswith("Unterminated string"):
        start = pos  # pos is the opening quote
        stop = _next_structural(s, start + 1)
        log.add("close_quote", stop, "closed unbalanced quote")
        return s[:stop].rstrip() + '"' + s[stop:]
    if msg.startswith("Expecting ',' delimiter"):
        if pos >= len(s):
            return _append_closers(s, log)
        log.add("insert_comma", pos, "inserted missing comma")
        return s[:pos] + "," + s[pos:]
    if msg.startswith("Expecting ':' delimiter"):
        if pos >= len(s):
            return _append_closers(s, log)
        log.add("insert_colon", pos, "inserted missing colon")
        return s[:pos] + ":" + s[pos:]
    if msg.startswith("Expecting property name"):
        if pos >= len(s):
            return _append_closers(s, log)
        if s[pos] in _CLOSE:
            return _drop_trailing_comma(s, pos, log)
        return _quote_bare(s, pos, log, key=True)
    if msg.startswith("Expecting value"):
        if pos >= len(s):
            return _append_closers(s, log)
        if s[pos] in _CLOSE:
            return _drop_trailing_comma(s, pos, log)
        return _quote_bare(s, pos, log, key=False)
    if "Invalid control character" in msg:
        log.add("strip_control", pos, "removed control character")
        return s[:pos] + s[pos + 1 :]
    return None


def _next_structural(s: str, start: int) -> int:
    for i in range(start, len(s)):
        if s[i] in ",:]}\n":
            return i
    return len(s)


def _append_closers(s: str, log: RepairLog) -> str | None:
    stack = _open_stack(s)
    if not stack:
        return None
    closers = "".join(_OPEN[c] for c in reversed(stack))
    log.add("append_closers", len(s), f"appended {closers!r}")
    return s.rstrip().rstrip(",") + closers


def _open_stack(s: str) -> list[str]:
    stack = []
    in_str = False
    escape = False
    for ch in s:
        if in_str:
            if escape:
                escape = False
            elif ch == "\\":
                escape = True
            elif ch == '"':
                in_str = False
            continue
        if ch == '"':
            in_str = True
        elif ch in _OPEN:
            stack.append(ch)
        elif ch in _CLOSE and stack and _OPEN[stack[-1]] == ch:
            stack.pop()
    return stack


def _drop_trailing_comma(s: str, pos: int, log: RepairLog) -> str | None:
    head = s[:pos].rstrip()
    if head.endswith(","):
        log.add("drop_comma", len(head) - 1, "removed trailing comma")
        return head[:-1] + s[pos:]
    return None


def _quote_bare(s: str, pos: int, log: RepairLog, key: bool) -> str | None:
    stop = _next_structural(s, pos)
    token = s[pos:stop].strip()
    if not token or '"' in token:
        return None
    log.add("quote_bare", pos, f"quoted bare {'key' if key else 'value'} {token!r}")
    return s[:pos] + json.dumps(token) + s[stop:]


def _truncate_to_complete(s: str, log: RepairLog) -> str:
    """Fall back to the longest prefix closable into valid JSON."""
    for end in range(len(s), 0, -1):
        if s[end - 1] not in ",]}\"'0123456789truefalsnl" and not s[end - 1].isalnum():
            continue
        head = s[:end].rstrip().rstrip(",")
        stack = _open_stack(head)
        candidate = head + "".join(_OPEN[c] for c in reversed(stack))
        try:
            json.loads(candidate)
            log.add("truncate", end, "truncated to last complete member")
            return candidate
        except json.JSONDecodeError:
            continue
    log.add("truncate", 0, "nothing salvageable")
    return "[]"


def _coerce_schema(s: str, data, log: RepairLog) -> tuple[str, RepairLog]:
    """Prune members until the text parses as a form parse."""
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        log.add("drop_non_form", 0, "top level is not an object or array")
        return "[]", log
    for _ in range(_MAX_FIXES):
        text = json.dumps(data, ensure_ascii=False)
        try:
            form_tree.parse_json(text)
            # keep the original text when it already conformed
            if not any(r == "prune_invalid" for r, _, _ in log.entries):
                try:
                    form_tree.parse_json(s)
                    return s, log
                except MalformedParse:
                    pass
            return text, log
        except MalformedParse as e:
            if not e.path:
                log.add("drop_non_form", 0, "unrepairable structure")
                return "[]", log
            data = _prune_path(data, e.path)
            log.add("prune_invalid", 0, f"removed element at {'/'.join(map(str, e.path))}")
    return "[]", log


def _prune_path(data, path):
    # remove the deepest list element along the path; if the path never
    # crosses a list, nothing is salvageable
    container = data
    last_list, last_idx = None, None
    node = data
    for step in path:
        if isinstance(node, list) and isinstance(step, int) and step < len(node):
            last_list, last_idx = node, step
            node = node[step]
        elif isinstance(node, dict) and step in node:
            node = node[step]
        else:
            break
    if last_list is not None:
        del last_list[last_idx]
        return container
    return []
