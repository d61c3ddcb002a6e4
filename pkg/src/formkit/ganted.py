"""Greedily-aligned normalized tree edit distance (GAnTED).

nTED is order-sensitive but forms have no canonical read order, so the
predicted tree's child lists are greedily re-permuted to minimize nTED:
a breadth-first pass moves each node up to `window` positions within its
sibling list, committing the best-scoring position.  Tables are converted
to trees under every row/column-major combination (both trees
independently) and the minimum score wins.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import form_tree
from .edit_metrics import DEFAULT_COSTS, FlatTree, TedCosts, nted_flat
from .form_tree import LabelTree, ParseTree, TableOrientation, count_tables, to_label_tree


@dataclass(frozen=True)
class GantedConfig:
    window: int = 10  # max displacement per node
    passes: int = 1  # 2 = "2-GAnTED"
    max_orientation_combos: int = 1024
    costs: TedCosts = field(default=DEFAULT_COSTS)


@dataclass
class GantedReport:
    combos_evaluated: int = 0
    combos_capped: bool = False
    pred_orientations: tuple[TableOrientation, ...] = ()
    gt_orientations: tuple[TableOrientation, ...] = ()
    pass_scores: tuple[float, ...] = ()  # scores after each pass, best combo
    initial_nted: float = 0.0


class _MNode:
    __slots__ = ("lidx", "children")

    def __init__(self, lidx: int, children: list["_MNode"]):
        self.lidx = lidx
        self.children = children


class _Aligner:
    """Greedy alignment of one (pred, gt) label-tree pair.

    The relabel-cost matrix over distinct labels is computed once; every
    candidate arrangement only re-gathers it in postorder.
    """

    def __init__(self, pred: LabelTree, gt: LabelTree, cfg: GantedConfig):
        self.cfg = cfg
        labels: dict[str, int] = {}

        def intern(s: str) -> int:
            return labels.setdefault(s, len(labels))

        def build(n: LabelTree) -> _MNode:
            return _MNode(intern(n.label), [build(c) for c in n.children])

        self.root = build(pred)
        self.pred_labels = sorted(labels, key=labels.get)
        from .edit_metrics import flatten

        self.fgt = flatten(gt)
        ulabels = self.pred_labels
        gt_ulabels = sorted(set(self.fgt.labels))
        gidx = {s: i for i, s in enumerate(gt_ulabels)}
        cu = np.empty((len(ulabels), len(gt_ulabels)))
        for i, s in enumerate(ulabels):
            for t, j in gidx.items():
                cu[i, j] = cfg.costs.relabel(s, t)
        self.gt_cols = np.fromiter(
            (gidx[s] for s in self.fgt.labels), np.int64, self.fgt.size
        )
        self.cu = cu

    def score(self) -> float:
        lidx: list[int] = []
        lmld: list[int] = []

        def walk(node: _MNode) -> int:
            first = None
            for c in node.children:
                f = walk(c)
                if first is None:
                    first = f
            lidx.append(node.lidx)
            lmld.append(first if first is not None else len(lidx) - 1)
            return lmld[-1]

        walk(self.root)
        n = len(lidx)
        seen: set[int] = set()
        keyroots = []
        for i in range(n - 1, -1, -1):
            if lmld[i] not in seen:
                seen.add(lmld[i])
                keyroots.append(i)
        keyroots.reverse()
        fpred = FlatTree(
            (), np.asarray(lmld, np.int64), np.asarray(keyroots, np.int64)
        )
        rows = np.asarray(lidx, np.int64)
        C = self.cu[rows][:, self.gt_cols]
        return nted_flat(fpred, self.fgt, C, self.cfg.costs)

    def run_pass(self) -> float:
        """One breadth-first repositioning pass; returns the resulting nTED."""
        best = self.score()
        queue: deque[tuple[_MNode, _MNode | None]] = deque([(self.root, None)])
        while queue:
            node, parent = queue.popleft()
            if parent is not None and len(parent.children) > 1:
                best = self._reposition(node, parent, best)
            for c in node.children:
                queue.append((c, node))
        return best

    def _reposition(self, node: _MNode, parent: _MNode, cur_score: float) -> float:
        sibs = parent.children
        idx = next(i for i, c in enumerate(sibs) if c is node)
        lo = max(0, idx - self.cfg.window)
        hi = min(len(sibs) - 1, idx + self.cfg.window)
        best_score, best_pos = cur_score, idx
        for j in range(lo, hi + 1):
            if j == idx:
                continue
            sibs.pop(idx)
            sibs.insert(j, node)
            s = self.score()
            sibs.pop(j)
            sibs.insert(idx, node)
            # strict improvement only: ties keep the smallest displacement,
            # and j closer to idx is tried... positions are scanned left to
            # right, so among equal scores prefer smaller |j-idx| then smaller j
            if s < best_score - 1e-15 or (
                abs(s - best_score) <= 1e-15
                and (
                    abs(j - idx) < abs(best_pos - idx)
                    or (abs(j - idx) == abs(best_pos - idx) and j < best_pos)
                )
            ):
                best_score, best_pos = s, j
        if best_pos != idx:
            sibs.pop(idx)
            sibs.insert(best_pos, node)
        return best_score


def greedy_align_pass(
    pred: LabelTree, gt: LabelTree, cfg: GantedConfig = GantedConfig()
) -> tuple[LabelTree, float]:
    """Run one alignment pass; returns the re-permuted tree and its nTED."""
    al = _Aligner(pred, gt, cfg)
    score = al.run_pass()
    names = al.pred_labels

    def freeze(n: _MNode) -> LabelTree:
        return LabelTree(names[n.lidx], tuple(freeze(c) for c in n.children))

    return freeze(al.root), score


def ganted_label_trees(
    pred: LabelTree, gt: LabelTree, cfg: GantedConfig = GantedConfig()
) -> tuple[float, tuple[float, ...], float]:
    """GAnTED on pre-converted label trees.

    Returns (final score, per-pass scores, initial nTED).
    """
    al = _Aligner(pred, gt, cfg)
    initial = al.score()
    pass_scores = []
    for _ in range(cfg.passes):
        pass_scores.append(al.run_pass())
    return pass_scores[-1], tuple(pass_scores), initial


def ganted(
    pred: ParseTree, gt: ParseTree, cfg: GantedConfig = GantedConfig()
) -> tuple[float, GantedReport]:
    """GAnTED between two parses, minimized over table orientations."""
    kp, kg = count_tables(pred), count_tables(gt)
    orient = (TableOrientation.ROW_MAJOR, TableOrientation.COL_MAJOR)
    capped = 2 ** (kp + kg) > cfg.max_orientation_combos
    gt_combos = [(TableOrientation.ROW_MAJOR,) * kg] if capped else list(product(orient, repeat=kg))
    if 2**kp > cfg.max_orientation_combos:
        pred_combos = [(TableOrientation.ROW_MAJOR,) * kp]
        capped = True
    else:
        pred_combos = list(product(orient, repeat=kp))

    report = GantedReport(combos_capped=capped)
    best: float | None = None
    for gc in gt_combos:
        gt_lt = to_label_tree(gt, dict(enumerate(gc)))
        for pc in pred_combos:
            pred_lt = to_label_tree(pred, dict(enumerate(pc)))
            score, passes, initial = ganted_label_trees(pred_lt, gt_lt, cfg)
            report.combos_evaluated += 1
            if best is None or score < best:
                best = score
                report.pred_orientations = pc
                report.gt_orientations = gc
                report.pass_scores = passes
                report.initial_nted = initial
    assert best is not None
    return best, report
