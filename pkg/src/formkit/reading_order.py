"""Read-order detection for top-level layout elements.

Elements are emitted roughly top-to-bottom, but anything horizontally
parallel to the current element (its vertical center within a tolerance
band around the element) and to its left is emitted first, recursively.
This reads naturally around large elements like tables.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Rect:
    left: float
    top: float
    right: float
    bottom: float

    @property
    def width(self) -> float:
        return self.right - self.left

    @property
    def height(self) -> float:
        return self.bottom - self.top

    @property
    def center_y(self) -> float:
        return (self.top + self.bottom) / 2.0


@dataclass(frozen=True)
class LayoutElement:
    id: int
    bbox: Rect


@dataclass(frozen=True)
class ReadOrderConfig:
    # vertical tolerance as a fraction of the current element's height
    band_fraction: float = 0.3


def order_elements(
    elements: list[LayoutElement], cfg: ReadOrderConfig = ReadOrderConfig()
) -> list[int]:
    """Return element ids in read order (a permutation of the input ids).

    Deterministic and independent of the input list order: elements are
    pre-sorted by (top, left, id) and ties always break the same way.
    """
    pending = sorted(elements, key=lambda e: (e.bbox.top, e.bbox.left, e.id))
    placed: set[int] = set()
    order: list[int] = []

    def place(e: LayoutElement, stack: set[int]):
        if e.id in placed or e.id in stack:
            return
        stack.add(e.id)
        band = cfg.band_fraction * e.bbox.height
        lo, hi = e.bbox.top - band, e.bbox.bottom + band
        parallel = [
            u
            for u in pending
            if u.id not in placed and u.id != e.id and lo <= u.bbox.center_y <= hi
        ]
        lefts = sorted(
            (u for u in parallel if u.bbox.left < e.bbox.left),
            key=lambda u: (u.bbox.left, u.bbox.top, u.id),
        )
        for u in lefts:
            place(u, stack)
        if e.id not in placed:
            placed.add(e.id)
            order.append(e.id)
        stack.discard(e.id)

    for e in pending:
        if e.id not in placed:
            place(e, set())
    return order
