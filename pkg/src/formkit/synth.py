"""Seeded synthetic form-page generator.

Pages are built by repeatedly placing a label-value set or a table into an
empty region; every successful placement opens a new empty region
underneath it, and the area right of the rightmost content stays
available.  Once every region has had a failed generation the page is
complete.  Geometry is vector-only (text runs, rule lines, boxes) with a
pluggable text measurer; ground truth is emitted as a ParseTree whose
root order follows the read-order procedure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Union

from .form_tree import Entity, EntityClass, ParseNode, ParseTree, Table
from .pools import ContentPools
from .reading_order import LayoutElement, ReadOrderConfig, Rect, order_elements
from .rng import SplitMix64

Measurer = Callable[[str, float], float]


def heuristic_measurer(text: str, height: float) -> float:
    """Glyph-free width estimate: 0.55 of the text height per character."""
    return 0.55 * height * len(text)


PAGE_MARGIN = 16.0


@dataclass(frozen=True)
class PageConfig:
    width: int = 768
    height: int = 1152
    seed: int = 0
    table_probability: float = 0.2
    measurer: Measurer = heuristic_measurer


class RelationshipIndicator(enum.Enum):
    COLON = "colon"
    LINE = "line"
    COLON_LINE = "colon+line"
    DOTTED_LINE = "dotted line"
    COLON_DOTTED_LINE = "colon+dotted line"
    BOX = "box"
    COLON_BOX = "colon+box"
    TO_RIGHT = "to right"
    TO_LEFT = "to left"
    BELOW = "below"


_COLON_INDICATORS = {
    RelationshipIndicator.COLON,
    RelationshipIndicator.COLON_LINE,
    RelationshipIndicator.COLON_DOTTED_LINE,
    RelationshipIndicator.COLON_BOX,
}
_LINE_INDICATORS = {
    RelationshipIndicator.LINE,
    RelationshipIndicator.COLON_LINE,
    RelationshipIndicator.DOTTED_LINE,
    RelationshipIndicator.COLON_DOTTED_LINE,
}
_BOX_INDICATORS = {RelationshipIndicator.BOX, RelationshipIndicator.COLON_BOX}


# ---------------------------------------------------------------------------
# geometry primitives


@dataclass(frozen=True)
class TextRun:
    x: float
    y: float
    height: float
    text: str

    def bbox(self, measurer: Measurer) -> Rect:
        return Rect(self.x, self.y, self.x + measurer(self.text, self.height), self.y + self.height)


@dataclass(frozen=True)
class RuleLine:
    x1: float
    y1: float
    x2: float
    y2: float
    thickness: float
    dotted: bool = False


@dataclass(frozen=True)
class BoxOutline:
    left: float
    top: float
    right: float
    bottom: float
    thickness: float


Primitive = Union[TextRun, RuleLine, BoxOutline]


@dataclass
class ElementGroup:
    """One read-order unit: a table, a headed label-value set, or a pair."""

    id: int
    kind: str  # "table" | "lv_set" | "pair"
    bbox: Rect
    primitives: list[Primitive]
    node: ParseNode


@dataclass
class FormPage:
    width: int
    height: int
    groups: list[ElementGroup]  # in read order
    gt: ParseTree
    provenance: dict


def _translate(prims: list[Primitive], dx: float, dy: float) -> list[Primitive]:
    out: list[Primitive] = []
    for p in prims:
        if isinstance(p, TextRun):
            out.append(replace(p, x=p.x + dx, y=p.y + dy))
        elif isinstance(p, RuleLine):
            out.append(replace(p, x1=p.x1 + dx, y1=p.y1 + dy, x2=p.x2 + dx, y2=p.y2 + dy))
        else:
            out.append(
                replace(p, left=p.left + dx, top=p.top + dy, right=p.right + dx, bottom=p.bottom + dy)
            )
    return out


def _prim_bbox(p: Primitive, measurer: Measurer) -> Rect:
    if isinstance(p, TextRun):
        return p.bbox(measurer)
    if isinstance(p, RuleLine):
        t = p.thickness / 2.0
        return Rect(min(p.x1, p.x2) - t, min(p.y1, p.y2) - t, max(p.x1, p.x2) + t, max(p.y1, p.y2) + t)
    return Rect(p.left, p.top, p.right, p.bottom)


def _union(rects: list[Rect]) -> Rect:
    return Rect(
        min(r.left for r in rects),
        min(r.top for r in rects),
        max(r.right for r in rects),
        max(r.bottom for r in rects),
    )


# ---------------------------------------------------------------------------
# numbers for table cells


def sample_number(rng: SplitMix64) -> str:
    """One of the ten table-cell number formats, chosen uniformly."""
    fmt = rng.randint(0, 9)
    if fmt == 0:
        return str(rng.randint(0, 100))
    if fmt == 1:
        return str(rng.randint(0, 9999))
    if fmt == 2:
        return str(rng.randint(-999, 999))
    if fmt == 3:
        return f"{rng.randint(0, 100)}%"
    if fmt == 4:
        return f"{rng.uniform(0.0, 100.0):.2f}%"
    if fmt == 5:
        return f"{rng.uniform(0.0, 100.0):.2f}"
    if fmt == 6:
        return f"{rng.random():.3f}"
    if fmt == 7:
        return f"{-rng.random():.3f}"
    if fmt == 8:
        return f"${rng.randint(0, 9999)}"
    return f"${rng.randint(0, 999)}"


_HEADER_LEN_WEIGHTS = (81.4, 18.6, 6.9, 2.0)  # 1..4 words, normalized when sampling


def _sample_header_text(rng: SplitMix64, words: list[str]) -> str:
    total = sum(_HEADER_LEN_WEIGHTS)
    x = rng.random() * total
    n = 1
    acc = 0.0
    for i, w in enumerate(_HEADER_LEN_WEIGHTS):
        acc += w
        if x < acc:
            n = i + 1
            break
    return " ".join(rng.choice(words) for _ in range(n))


# ---------------------------------------------------------------------------
# tables


@dataclass
class TablePlacement:
    bbox: Rect  # local, origin at (0, 0)
    primitives: list[Primitive]
    node: ParseNode
    has_title: bool
    blank_cells: int
    word_cells: int
    number_cells: int
    n_rows: int
    n_cols: int


def gen_table(
    rng: SplitMix64, pools: ContentPools, region: Rect, measurer: Measurer = heuristic_measurer
) -> Optional[TablePlacement]:
    """Generate a table fitting the region, or None when it cannot fit."""
    words = pools.non_stop_words()
    n_rows = rng.randint(2, 15)
    n_cols = rng.randint(2, 10)
    title = None
    if rng.chance(0.33):
        title = " ".join(rng.choice(words) for _ in range(rng.randint(1, 6)))
    title_h = float(rng.randint(12, 32))
    header_h = float(rng.randint(8, 32))
    cell_h = float(rng.randint(8, 32))

    row_headers = [_sample_header_text(rng, words) for _ in range(n_rows)]
    col_headers = [_sample_header_text(rng, words) for _ in range(n_cols)]
    cells: list[list[str]] = []
    kinds: list[list[bool]] = []  # True = word cell
    word_cells = number_cells = blank_cells = 0
    for _ in range(n_rows):
        row = []
        kind_row = []
        for _ in range(n_cols):
            is_word = rng.chance(0.5)
            row.append(rng.choice(words) if is_word else sample_number(rng))
            kind_row.append(is_word)
        cells.append(row)
        kinds.append(kind_row)
    for i in range(n_rows):
        for j in range(n_cols):
            if rng.chance(0.15):
                cells[i][j] = ""
                blank_cells += 1
            elif kinds[i][j]:
                word_cells += 1
            else:
                number_cells += 1

    pad_x = rng.uniform(4.0, 14.0)
    pad_y = rng.uniform(2.0, 8.0)
    col_w = [
        max(
            measurer(col_headers[j], header_h),
            max(measurer(cells[i][j], cell_h) for i in range(n_rows)),
        )
        + 2 * pad_x
        for j in range(n_cols)
    ]
    row_header_w = max(measurer(h, header_h) for h in row_headers) + 2 * pad_x
    header_row_h = header_h + 2 * pad_y
    row_h = max(cell_h, header_h) + 2 * pad_y

    grid_w = sum(col_w)
    total_w = grid_w + row_header_w
    title_space = title_h + pad_y if title is not None else 0.0
    total_h = title_space + header_row_h + n_rows * row_h
    if total_w > region.width or total_h > region.height:
        return None

    prims: list[Primitive] = []
    if title is not None:
        prims.append(TextRun(0.0, 0.0, title_h, title))
    y0 = title_space
    x = 0.0
    for j in range(n_cols):
        prims.append(TextRun(x + pad_x, y0 + pad_y, header_h, col_headers[j]))
        x += col_w[j]
    for i in range(n_rows):
        ry = y0 + header_row_h + i * row_h
        x = 0.0
        for j in range(n_cols):
            if cells[i][j]:
                prims.append(TextRun(x + pad_x, ry + pad_y, cell_h, cells[i][j]))
            x += col_w[j]
        prims.append(TextRun(grid_w + pad_x, ry + pad_y, header_h, row_headers[i]))

    thick = float(rng.randint(1, 3))
    # headers are always separated from the cells
    prims.append(RuleLine(0.0, y0 + header_row_h, total_w, y0 + header_row_h, thick))
    prims.append(RuleLine(grid_w, y0, grid_w, total_h, thick))
    if rng.chance(0.5):  # inner grid
        gt = float(rng.randint(1, 3))
        x = 0.0
        for j in range(n_cols - 1):
            x += col_w[j]
            prims.append(RuleLine(x, y0, x, total_h, gt))
        for i in range(n_rows - 1):
            ly = y0 + header_row_h + (i + 1) * row_h
            prims.append(RuleLine(0.0, ly, total_w, ly, gt))
    if rng.chance(0.5):  # outer border
        bt = float(rng.randint(1, 3))
        prims.append(BoxOutline(0.0, y0, total_w, total_h, bt))

    table = Table(
        None,
        tuple(row_headers),
        tuple(col_headers),
        tuple(tuple(r) for r in cells),
    )
    node: ParseNode = table
    if title is not None:
        node = Entity(title, EntityClass.HEADER, (table,))
    return TablePlacement(
        Rect(0.0, 0.0, total_w, total_h),
        prims,
        node,
        title is not None,
        blank_cells,
        word_cells,
        number_cells,
        n_rows,
        n_cols,
    )


# ---------------------------------------------------------------------------
# label-value sets


@dataclass
class PairGeometry:
    primitives: list[Primitive]
    width: float
    height: float
    label_text: str
    value_text: Optional[str]  # GT answer text; None = no answer
    checkbox: bool


@dataclass
class LVSetPlacement:
    bbox: Rect  # local, origin at (0, 0)
    header: Optional[str]
    pair_groups: list[tuple[Rect, list[Primitive], Entity]]
    header_primitives: list[Primitive]
    indicator: RelationshipIndicator
    checkbox_pairs: int
    n_pairs: int

    def all_primitives(self) -> list[Primitive]:
        out = list(self.header_primitives)
        for _, prims, _ in self.pair_groups:
            out.extend(prims)
        return out


def _indicator_label(label: str, indicator: RelationshipIndicator) -> str:
    base = label.rstrip(":").rstrip()
    if indicator in _COLON_INDICATORS:
        return base + ":"
    return base


def _render_pair(
    rng: SplitMix64,
    label: str,
    value: Optional[str],
    indicator: RelationshipIndicator,
    label_h: float,
    value_h: float,
    value_below: bool,
    value_x: Optional[float],
    measurer: Measurer,
) -> PairGeometry:
    checkbox = rng.chance(0.005)
    display = value or ""
    gt_value = value
    if checkbox:
        glyphs = rng.choice(["[]", "()", "{}"])
        inner = "X" if rng.chance(0.5) else " "
        display = glyphs[0] + inner + glyphs[1]
        gt_value = "X" if inner == "X" else None
    label_w = measurer(label, label_h)
    value_w = measurer(display, value_h) if display else rng.uniform(30.0, 80.0)
    gap = rng.uniform(4.0, 12.0)
    prims: list[Primitive] = []

    if indicator is RelationshipIndicator.BELOW:
        vy = 0.0
        line_y = value_h + 2.0
        ly = line_y + 4.0
        if display:
            prims.append(TextRun(0.0, vy, value_h, display))
        prims.append(RuleLine(0.0, line_y, max(value_w, label_w), line_y, float(rng.randint(1, 3))))
        prims.append(TextRun(0.0, ly, label_h, label))
        w = max(value_w, label_w)
        h = ly + label_h
    elif indicator is RelationshipIndicator.TO_LEFT:
        if display:
            prims.append(TextRun(0.0, 0.0, value_h, display))
        if rng.chance(0.5):
            uy = value_h + 2.0
            prims.append(RuleLine(0.0, uy, value_w, uy, float(rng.randint(1, 3))))
        else:
            prims.append(BoxOutline(-2.0, -2.0, value_w + 2.0, value_h + 2.0, float(rng.randint(1, 3))))
        prims.append(TextRun(value_w + gap + 2.0, 0.0, label_h, label))
        w = value_w + gap + 2.0 + label_w
        h = max(value_h, label_h) + 4.0
    elif value_below:
        prims.append(TextRun(0.0, 0.0, label_h, label))
        vy = label_h + rng.uniform(2.0, 6.0)
        vx = rng.uniform(0.0, 10.0)
        if display:
            prims.append(TextRun(vx, vy, value_h, display))
        w = max(label_w, vx + value_w)
        h = vy + value_h
        prims += _value_marks(rng, indicator, vx, vy, value_w, value_h)
        w = max(w, vx + value_w + 2.0)
        h = max(h, vy + value_h + 4.0)
    else:  # value to the right
        prims.append(TextRun(0.0, 0.0, label_h, label))
        vx = value_x if value_x is not None else label_w + gap
        vx = max(vx, label_w + 4.0)
        if display:
            prims.append(TextRun(vx, 0.0, value_h, display))
        prims += _value_marks(rng, indicator, vx, 0.0, value_w, value_h)
        w = vx + value_w + 2.0
        h = max(label_h, value_h) + 4.0

    # normalize to a (0,0) local origin with true extents (boxes and line
    # strokes can overhang the text area)
    bb = _union([_prim_bbox(p, measurer) for p in prims])
    dx = -min(bb.left, 0.0)
    dy = -min(bb.top, 0.0)
    prims = _translate(prims, dx, dy)
    return PairGeometry(prims, max(w, bb.right) + dx, max(h, bb.bottom) + dy, label, gt_value, checkbox)


def _value_marks(
    rng: SplitMix64,
    indicator: RelationshipIndicator,
    vx: float,
    vy: float,
    vw: float,
    vh: float,
) -> list[Primitive]:
    if indicator in _LINE_INDICATORS:
        dotted = indicator in (
            RelationshipIndicator.DOTTED_LINE,
            RelationshipIndicator.COLON_DOTTED_LINE,
        )
        uy = vy + vh + 2.0
        return [RuleLine(vx, uy, vx + vw, uy, float(rng.randint(1, 3)), dotted)]
    if indicator in _BOX_INDICATORS:
        return [BoxOutline(vx - 2.0, vy - 2.0, vx + vw + 2.0, vy + vh + 2.0, float(rng.randint(1, 3)))]
    return []


def gen_labelvalue_set(
    rng: SplitMix64, pools: ContentPools, region: Rect, measurer: Measurer = heuristic_measurer
) -> Optional[LVSetPlacement]:
    """Generate a label-value set inside the region, or None on failure."""
    target = rng.randint(2, 18)
    header = None
    if pools.titles and rng.chance(0.33):
        header = rng.choice(pools.titles)
    header_h = float(rng.randint(12, 32))
    label_h = header_h if rng.chance(0.30) else float(rng.randint(8, 32))
    value_h = label_h if rng.chance(0.50) else float(rng.randint(8, 32))
    indicator = rng.choice(list(RelationshipIndicator))
    if indicator in (RelationshipIndicator.TO_RIGHT, RelationshipIndicator.TO_LEFT):
        value_below = False
    elif indicator is RelationshipIndicator.BELOW:
        value_below = False  # handled inside the pair renderer
    else:
        value_below = rng.chance(0.5)
    aligned = True if indicator is RelationshipIndicator.TO_RIGHT else (not value_below and rng.chance(0.5))

    raw_pairs: list[tuple[str, Optional[str]]] = []
    for _ in range(target):
        if pools.label_value_pairs and not rng.chance(0.15):
            lab, val = rng.choice(pools.label_value_pairs)
            raw_pairs.append((_indicator_label(lab, indicator), val))
        else:
            raw_pairs.append((_indicator_label(rng.choice(pools.labels), indicator), None))

    value_x = None
    if aligned and not value_below:
        value_x = max(measurer(lab, label_h) for lab, _ in raw_pairs) + rng.uniform(6.0, 16.0)

    geoms = [
        _render_pair(rng, lab, val, indicator, label_h, value_h, value_below, value_x, measurer)
        for lab, val in raw_pairs
    ]
    widest = max(g.width for g in geoms)

    header_w = measurer(header, header_h) if header else 0.0
    if max(widest, header_w) > region.width:
        return None  # even the maximum block width cannot hold a pair

    # block width: randomly selected, grown to fit at least one column
    block_w = rng.uniform(widest, region.width)
    header_offset = False
    top_middle = False
    if header:
        top_middle = rng.chance(0.5)
        if not top_middle:
            header_offset = rng.chance(0.5)

    content_y0 = 0.0
    content_x0 = 0.0
    header_prims: list[Primitive] = []
    if header:
        if header_offset:
            content_x0 = header_w + rng.uniform(8.0, 20.0)
            if content_x0 + widest > region.width:
                content_x0 = 0.0
                content_y0 = header_h + rng.uniform(4.0, 10.0)
        else:
            content_y0 = header_h + rng.uniform(4.0, 10.0)
        block_w = min(max(block_w, content_x0 + widest), region.width)

    col_gap = rng.uniform(14.0, 30.0)
    pair_gap = rng.uniform(8.0, 16.0)
    placed: list[tuple[Rect, list[Primitive], Entity]] = []
    x = content_x0
    y = content_y0
    col_count = 0
    for g in geoms:
        if y + g.height > region.height:
            # forced new column at the region bottom, if there is room
            nx = x + widest + col_gap
            if nx + widest > block_w or content_y0 + g.height > region.height:
                break
            x, y, col_count = nx, content_y0, 0
        elif col_count and rng.chance(min(0.05 * col_count, 0.5)):
            nx = x + widest + col_gap
            if nx + widest <= block_w:
                x, y, col_count = nx, content_y0, 0
        prims = _translate(g.primitives, x, y)
        answers = (g.value_text,) if g.value_text is not None else ()
        node = Entity(g.label_text, EntityClass.QUESTION, (), tuple(a for a in answers))
        bbox = _union([_prim_bbox(p, measurer) for p in prims])
        placed.append((bbox, prims, node))
        y += g.height + pair_gap
        col_count += 1

    if not placed:
        return None

    content_box = _union([b for b, _, _ in placed])
    if header:
        if top_middle:
            hx = max(0.0, (content_box.right - header_w) / 2.0)
        else:
            hx = 0.0
        header_prims = [TextRun(hx, 0.0, header_h, header)]
        bbox = _union([content_box, _prim_bbox(header_prims[0], measurer)])
    else:
        bbox = content_box
    return LVSetPlacement(
        bbox,
        header,
        placed,
        header_prims,
        indicator,
        sum(1 for g in geoms[: len(placed)] if g.checkbox),
        len(placed),
    )


# ---------------------------------------------------------------------------
# paragraphs (Wikipedia-style text layout)


class WordTooWide(ValueError):
    pass


@dataclass(frozen=True)
class ParagraphStyle:
    column_width: float
    text_height: float
    word_space: float
    newline_space: float
    mode: str  # "indented" | "no_indent" | "inverse_indent"
    indent: float

    @property
    def em(self) -> float:
        return 1.6 * self.text_height


def sample_paragraph_style(rng: SplitMix64, page_width: float) -> ParagraphStyle:
    """Sample a style within the documented ranges (Em = 1.6 x text height)."""
    text_height = float(rng.randint(8, 32))
    em = 1.6 * text_height
    x = rng.random()
    mode = "indented" if x < 0.80 else ("no_indent" if x < 0.98 else "inverse_indent")
    return ParagraphStyle(
        column_width=rng.uniform(page_width / 5.0, page_width),
        text_height=text_height,
        word_space=em * rng.uniform(0.2, 0.5),
        newline_space=rng.uniform(1.0, text_height),
        mode=mode,
        indent=em * rng.uniform(0.3, 6.0),
    )


def layout_paragraph(
    words: list[str],
    style: ParagraphStyle,
    origin: tuple[float, float],
    measurer: Measurer = heuristic_measurer,
    rng: Optional[SplitMix64] = None,
) -> list[TextRun]:
    """Greedy line fill with wrapping and per-mode indentation."""
    if any(measurer(w, style.text_height) > style.column_width for w in words):
        raise WordTooWide("a word exceeds the column width")
    rng = rng or SplitMix64(0)
    ox, oy = origin
    runs: list[TextRun] = []
    y = oy
    if style.mode == "no_indent":
        y += rng.uniform(0.0, style.newline_space)
    first_line = True

    def line_start() -> float:
        perturb = rng.uniform(0.0, style.word_space)
        if style.mode == "indented" and first_line:
            return ox + style.indent + perturb
        if style.mode == "inverse_indent" and not first_line:
            return ox + style.indent + perturb
        return ox + perturb

    x = line_start()
    for w in words:
        ww = measurer(w, style.text_height)
        if x + ww > ox + style.column_width:
            y += style.text_height + style.newline_space
            first_line = False
            x = line_start()
            if x + ww > ox + style.column_width:
                x = ox  # indent would overflow; plain start always fits
        runs.append(TextRun(x, y, style.text_height, w))
        x += ww + style.word_space
    return runs


# ---------------------------------------------------------------------------
# page assembly


_MAX_PLACEMENTS = 400


def gen_page(cfg: PageConfig, pools: ContentPools) -> FormPage:
    """Generate one page; a pure function of (seed, config, pools)."""
    rng = SplitMix64(cfg.seed)
    measurer = cfg.measurer
    page = Rect(PAGE_MARGIN, PAGE_MARGIN, cfg.width - PAGE_MARGIN, cfg.height - PAGE_MARGIN)
    regions: list[Rect] = [page]
    right_region: Optional[Rect] = None
    right_failed = False
    rightmost = page.left
    groups: list[ElementGroup] = []
    next_id = 0

    def attempt(region: Rect) -> Optional[Rect]:
        nonlocal next_id
        if rng.chance(cfg.table_probability):
            t = gen_table(rng, pools, region, measurer)
            if t is None:
                return None
            prims = _translate(t.primitives, region.left, region.top)
            bbox = _union([_prim_bbox(p, measurer) for p in prims])
            groups.append(ElementGroup(next_id, "table", bbox, prims, t.node))
            next_id += 1
            return bbox
        lv = gen_labelvalue_set(rng, pools, region, measurer)
        if lv is None:
            return None
        dx, dy = region.left, region.top
        if lv.header is not None:
            prims = _translate(lv.all_primitives(), dx, dy)
            bbox = _union([_prim_bbox(p, measurer) for p in prims])
            node = Entity(
                lv.header, EntityClass.HEADER, tuple(n for _, _, n in lv.pair_groups)
            )
            groups.append(ElementGroup(next_id, "lv_set", bbox, prims, node))
            next_id += 1
            return bbox
        boxes = []
        for pb, prims, node in lv.pair_groups:
            tprims = _translate(prims, dx, dy)
            bbox = Rect(pb.left + dx, pb.top + dy, pb.right + dx, pb.bottom + dy)
            groups.append(ElementGroup(next_id, "pair", bbox, tprims, node))
            next_id += 1
            boxes.append(bbox)
        return _union(boxes)

    steps = 0
    while steps < _MAX_PLACEMENTS:
        steps += 1
        region = None
        use_right = False
        if regions:
            region = regions.pop(0)
        elif right_region is not None and not right_failed:
            region, use_right = right_region, True
        else:
            break
        if region.width < 20 or region.height < 12:
            if use_right:
                right_failed = True
            continue
        bbox = attempt(region)
        if bbox is None:
            if use_right:
                right_failed = True
            continue
        gap = rng.uniform(6.0, 18.0)
        below = Rect(bbox.left, bbox.bottom + gap, bbox.right, region.bottom)
        if below.height > 12:
            regions.append(below)
        if bbox.right > rightmost:
            rightmost = bbox.right
            new_right = Rect(rightmost + gap, page.top, page.right, page.bottom)
            if new_right.width > 20:
                right_region = new_right
                right_failed = False
            else:
                right_region = None

    elements = [LayoutElement(g.id, g.bbox) for g in groups]
    order = order_elements(elements, ReadOrderConfig())
    by_id = {g.id: g for g in groups}
    ordered = [by_id[i] for i in order]
    gt = ParseTree(tuple(g.node for g in ordered))
    return FormPage(
        cfg.width,
        cfg.height,
        ordered,
        gt,
        {
            "seed": cfg.seed,
            "width": cfg.width,
            "height": cfg.height,
            "table_probability": cfg.table_probability,
        },
    )


# ---------------------------------------------------------------------------
# SVG export


def render_svg(page: FormPage) -> str:
    """Deterministic vector rendering of a generated page."""
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{page.width}" height="{page.height}" '
        f'viewBox="0 0 {page.width} {page.height}">',
        f'<rect width="{page.width}" height="{page.height}" fill="white"/>',
    ]
    for g in page.groups:
        for p in g.primitives:
            if isinstance(p, TextRun):
                out.append(
                    f'<text x="{p.x:.2f}" y="{p.y + p.height:.2f}" font-size="{p.height:.2f}" '
                    f'font-family="sans-serif">{_esc(p.text)}</text>'
                )
            elif isinstance(p, RuleLine):
                dash = ' stroke-dasharray="3 3"' if p.dotted else ""
                out.append(
                    f'<line x1="{p.x1:.2f}" y1="{p.y1:.2f}" x2="{p.x2:.2f}" y2="{p.y2:.2f}" '
                    f'stroke="black" stroke-width="{p.thickness:.2f}"{dash}/>'
                )
            else:
                out.append(
                    f'<rect x="{p.left:.2f}" y="{p.top:.2f}" width="{p.right - p.left:.2f}" '
                    f'height="{p.bottom - p.top:.2f}" fill="none" stroke="black" '
                    f'stroke-width="{p.thickness:.2f}"/>'
                )
    out.append("</svg>")
    return "\n".join(out)


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
