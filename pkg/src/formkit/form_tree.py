"""Hierarchical form-parse data model and its JSON codec.

A document parse is an ordered forest of entities (header / question /
answer / other) and tables.  The same structures are shared by the
evaluation metrics and the synthetic generator.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Union

ENTITY_CLASSES = ("header", "question", "answer", "other")

_RESERVED_KEYS = {"contents", "answers", "row headers", "column headers", "cells"}


class EntityClass(str, enum.Enum):
    HEADER = "header"
    QUESTION = "question"
    ANSWER = "answer"
    OTHER = "other"


class TableOrientation(enum.Enum):
    ROW_MAJOR = "row"
    COL_MAJOR = "col"


class MalformedParse(ValueError):
    """Input JSON is syntactically valid but not a well-formed parse.

    ``path`` locates the offending element (list indices and object keys
    from the document root).
    """

    def __init__(self, message: str, path: tuple = ()):
        super().__init__(f"{message} (at {'/'.join(map(str, path)) or '<root>'})")
        self.path = path


class MissingOrientation(KeyError):
    pass


@dataclass(frozen=True)
class Entity:
    text: str
    cls: EntityClass
    children: tuple["ParseNode", ...] = ()
    answers: tuple[str, ...] = ()

    def __post_init__(self):
        if self.answers and self.cls is not EntityClass.QUESTION:
            raise MalformedParse("answers only allowed on questions")
        if self.children and self.cls is not EntityClass.HEADER:
            raise MalformedParse("contents only allowed on headers")


@dataclass(frozen=True)
class Table:
    title: str | None = None
    row_headers: tuple[str, ...] = ()
    col_headers: tuple[str, ...] = ()
    cells: tuple[tuple[str, ...], ...] | None = None  # row major

    def __post_init__(self):
        if self.cells is not None:
            if len(self.cells) != len(self.row_headers):
                raise MalformedParse("cell row count != number of row headers")
            for row in self.cells:
                if len(row) != len(self.col_headers):
                    raise MalformedParse("ragged cell matrix")


ParseNode = Union[Entity, Table]


@dataclass(frozen=True)
class ParseTree:
    roots: tuple[ParseNode, ...] = ()


@dataclass(frozen=True)
class LabelTree:
    """Plain ordered labeled tree; the input to TED/nTED/GAnTED."""

    label: str
    children: tuple["LabelTree", ...] = ()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


# ---------------------------------------------------------------------------
# JSON codec


def parse_json(text: str, lenient_tables: bool = False) -> ParseTree:
    """Parse the form-parse JSON format into a ParseTree.

    ``lenient_tables`` accepts table objects without a "cells" key
    (NAF-style annotations where cell transcriptions are unavailable).

    Raises MalformedParse on schema violations; the exception carries the
    path to the offending element.  Syntactic errors raise
    json.JSONDecodeError (run repair_json first for raw model output).
    """
    data = json.loads(text)
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise MalformedParse("top level must be an object or array")
    roots = tuple(_node_from_obj(obj, (i,), lenient_tables) for i, obj in enumerate(data))
    return ParseTree(roots)


def _node_from_obj(obj, path, lenient_tables) -> ParseNode:
    if not isinstance(obj, dict):
        raise MalformedParse("expected a JSON object", path)
    keys = set(obj)
    if "row headers" in keys or "column headers" in keys:
        return _table_from_obj(obj, path, lenient_tables)
    return _entity_from_obj(obj, path, lenient_tables)


def _table_from_obj(obj, path, lenient_tables) -> Table:
    allowed = {"row headers", "column headers", "cells"}
    if set(obj) - allowed:
        raise MalformedParse(f"unknown table keys {sorted(set(obj) - allowed)}", path)
    if "row headers" not in obj or "column headers" not in obj:
        raise MalformedParse("table needs both row and column headers", path)
    rows = _str_list(obj["row headers"], path + ("row headers",))
    cols = _str_list(obj["column headers"], path + ("column headers",))
    cells = None
    if "cells" in obj:
        raw = obj["cells"]
        if not isinstance(raw, list):
            raise MalformedParse("cells must be a list of rows", path + ("cells",))
        cells = tuple(_str_list(r, path + ("cells", i)) for i, r in enumerate(raw))
        if len(cells) != len(rows) or any(len(r) != len(cols) for r in cells):
            raise MalformedParse("ragged or mis-sized cell matrix", path + ("cells",))
    elif not lenient_tables:
        raise MalformedParse("table is missing cells", path)
    try:
        return Table(None, rows, cols, cells)
    except MalformedParse as e:
        raise MalformedParse(str(e), path)


def _entity_from_obj(obj, path, lenient_tables) -> Entity:
    text_keys = [k for k in obj if k not in _RESERVED_KEYS]
    if len(text_keys) != 1:
        raise MalformedParse("entity must have exactly one text: class pair", path)
    text = text_keys[0]
    cls_raw = obj[text]
    if not isinstance(cls_raw, str) or cls_raw not in ENTITY_CLASSES:
        raise MalformedParse(f"unknown entity class {cls_raw!r}", path + (text,))
    cls = EntityClass(cls_raw)
    extra = set(obj) - {text, "contents", "answers"}
    if extra:
        raise MalformedParse(f"unknown entity keys {sorted(extra)}", path)
    children: tuple[ParseNode, ...] = ()
    answers: tuple[str, ...] = ()
    if "contents" in obj:
        if cls is not EntityClass.HEADER:
            raise MalformedParse("contents only allowed on headers", path)
        raw = obj["contents"]
        if not isinstance(raw, list):
            raise MalformedParse("contents must be a list", path + ("contents",))
        children = tuple(
            _node_from_obj(c, path + ("contents", i), lenient_tables) for i, c in enumerate(raw)
        )
    if "answers" in obj:
        if cls is not EntityClass.QUESTION:
            raise MalformedParse("answers only allowed on questions", path)
        answers = _str_list(obj["answers"], path + ("answers",))
    return Entity(text, cls, children, answers)


def _str_list(raw, path) -> tuple[str, ...]:
    if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
        raise MalformedParse("expected a list of strings", path)
    return tuple(raw)


def serialize_json(tree: ParseTree) -> str:
    """Emit the exact JSON parse format; round-trips through parse_json."""
    if len(tree.roots) == 1:
        return _node_to_json(tree.roots[0])
    return "[" + ", ".join(_node_to_json(n) for n in tree.roots) + "]"


def _dumps(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def _node_to_json(node: ParseNode) -> str:
    if isinstance(node, Table):
        parts = [
            '"row headers":[' + ", ".join(map(_dumps, node.row_headers)) + "]",
            '"column headers":[' + ", ".join(map(_dumps, node.col_headers)) + "]",
        ]
        if node.cells is not None:
            rows = ["[" + ", ".join(map(_dumps, r)) + "]" for r in node.cells]
            parts.append('"cells":[' + ", ".join(rows) + "]")
        return "{" + ", ".join(parts) + "}"
    parts = [f"{_dumps(node.text)}: {_dumps(node.cls.value)}"]
    if node.children:
        parts.append('"contents":[' + ", ".join(_node_to_json(c) for c in node.children) + "]")
    if node.answers:
        parts.append('"answers":[' + ", ".join(map(_dumps, node.answers)) + "]")
    return "{" + ", ".join(parts) + "}"


# ---------------------------------------------------------------------------
# Conversion to plain labeled trees (metric input)


def iter_tables(tree: ParseTree):
    """Tables in pre-order; yields (index, table)."""
    idx = 0
    stack = list(reversed(tree.roots))
    while stack:
        node = stack.pop()
        if isinstance(node, Table):
            yield idx, node
            idx += 1
        else:
            stack.extend(reversed(node.children))


def count_tables(tree: ParseTree) -> int:
    return sum(1 for _ in iter_tables(tree))


def to_label_tree(
    tree: ParseTree, orientations: dict[int, TableOrientation] | None = None
) -> LabelTree:
    """Flatten a ParseTree into a single ordered labeled tree.

    A synthetic empty-label root holds the document roots so multi-root
    parses form one tree.  Tables are indexed in pre-order; every table
    must have an orientation (RowMajor: row headers own their row's cells,
    column headers childless; ColMajor is the transpose).
    """
    orientations = orientations or {}
    counter = [0]

    def convert(node: ParseNode) -> LabelTree:
        if isinstance(node, Table):
            idx = counter[0]
            counter[0] += 1
            if idx not in orientations:
                raise MissingOrientation(idx)
            return _table_to_label_tree(node, orientations[idx])
        kids = [convert(c) for c in node.children]
        kids += [LabelTree(a) for a in node.answers]
        return LabelTree(node.text, tuple(kids))

    return LabelTree("", tuple(convert(r) for r in tree.roots))


def _table_to_label_tree(table: Table, orientation: TableOrientation) -> LabelTree:
    kids: list[LabelTree] = []
    if table.title is not None:
        kids.append(LabelTree(table.title))
    if orientation is TableOrientation.ROW_MAJOR:
        majors, minors = table.row_headers, table.col_headers
        cell = lambda i, j: table.cells[i][j]  # noqa: E731
    else:
        majors, minors = table.col_headers, table.row_headers
        cell = lambda i, j: table.cells[j][i]  # noqa: E731
    for i, h in enumerate(majors):
        if table.cells is None:
            kids.append(LabelTree(h))
        else:
            kids.append(LabelTree(h, tuple(LabelTree(cell(i, j)) for j in range(len(minors)))))
    kids.extend(LabelTree(h) for h in minors)
    return LabelTree("", tuple(kids))


def all_row_major(tree: ParseTree) -> dict[int, TableOrientation]:
    return {i: TableOrientation.ROW_MAJOR for i, _ in iter_tables(tree)}


def tree_stats(tree: ParseTree) -> dict[str, int]:
    """Node counts by class, plus tables and answer strings."""
    counts = {c: 0 for c in ENTITY_CLASSES}
    counts["table"] = 0
    counts["answer_strings"] = 0

    def walk(node: ParseNode):
        if isinstance(node, Table):
            counts["table"] += 1
            return
        counts[node.cls.value] += 1
        counts["answer_strings"] += len(node.answers)
        for c in node.children:
            walk(c)

    for r in tree.roots:
        walk(r)
    return counts
