"""Alignment-based entity/relationship F-measures and word-sequence alignment.

Predicted entity strings are aligned one-to-one to ground-truth strings by
minimum total normalized edit distance (exact assignment), then scored:
a matched pair is a true positive when the classes agree and the text
cost is within the configured threshold.  Relationships are the
header->content and question->answer edges between matched entities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .edit_metrics import _levenshtein, levenshtein_norm
from .form_tree import Entity, EntityClass, ParseTree, Table


@dataclass(frozen=True)
class MatchConfig:
    text_threshold: float = 0.0  # max relabel cost for a true positive
    per_class: bool = True


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f_measure: float
    tp: int
    fp: int
    fn: int

    @staticmethod
    def from_counts(tp: int, fp: int, fn: int) -> "PRF":
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        f = 2 * p * r / (p + r) if p + r else 0.0
        return PRF(p, r, f, tp, fp, fn)


@dataclass(frozen=True)
class EntityRef:
    index: int
    text: str
    cls: EntityClass


@dataclass(frozen=True)
class Matching:
    pairs: list[tuple[int, int, float]]  # (pred index, gt index, text cost)
    unmatched_pred: list[int]
    unmatched_gt: list[int]
    total_cost: float


def extract_entities(tree: ParseTree) -> tuple[list[EntityRef], list[tuple[int, int, str]]]:
    """Pre-order entities (answers included as class=answer) and edges.

    Table internals are excluded; tables are scored by GAnTED instead.
    Edges are (parent index, child index, kind) with kind "content" or
    "answer".
    """
    entities: list[EntityRef] = []
    edges: list[tuple[int, int, str]] = []

    def walk(node) -> int | None:
        if isinstance(node, Table):
            return None
        my = len(entities)
        entities.append(EntityRef(my, node.text, node.cls))
        for c in node.children:
            ci = walk(c)
            if ci is not None:
                edges.append((my, ci, "content"))
        for a in node.answers:
            ai = len(entities)
            entities.append(EntityRef(ai, a, EntityClass.ANSWER))
            edges.append((my, ai, "answer"))
        return my

    for r in tree.roots:
        walk(r)
    return entities, edges


def align_entities(
    pred: ParseTree, gt: ParseTree, cfg: MatchConfig = MatchConfig()
) -> Matching:
    """Minimum-cost one-to-one assignment of entity texts (unmatched = 1.0)."""
    pe, _ = extract_entities(pred)
    ge, _ = extract_entities(gt)
    return _assign([e.text for e in pe], [e.text for e in ge])


def _assign(pred_texts: list[str], gt_texts: list[str]) -> Matching:
    np_, ng = len(pred_texts), len(gt_texts)
    if np_ == 0 or ng == 0:
        return Matching([], list(range(np_)), list(range(ng)), float(np_ + ng))
    size = np_ + ng
    cost = np.ones((size, size))
    cost[np_:, ng:] = 0.0
    for i, a in enumerate(pred_texts):
        for j, b in enumerate(gt_texts):
            # epsilon nudges keep optimal ties deterministic: prefer
            # index-aligned pairs (so self-evaluation matches identically),
            # then earliest (gt index, pred index)
            eps = 1e-9 * abs(i - j) + 1e-13 * (j * np_ + i)
            cost[i, j] = levenshtein_norm(a, b) + eps
    rows, cols = linear_sum_assignment(cost)
    pairs = []
    matched_p, matched_g = set(), set()
    for i, j in zip(rows, cols):
        if i < np_ and j < ng:
            pairs.append((int(i), int(j), levenshtein_norm(pred_texts[i], gt_texts[j])))
            matched_p.add(int(i))
            matched_g.add(int(j))
    pairs.sort(key=lambda t: (t[1], t[0]))
    total = sum(c for _, _, c in pairs)
    total += (np_ - len(matched_p)) + (ng - len(matched_g))
    return Matching(
        pairs,
        [i for i in range(np_) if i not in matched_p],
        [j for j in range(ng) if j not in matched_g],
        float(total),
    )


def entity_prf(
    pred: ParseTree, gt: ParseTree, cfg: MatchConfig = MatchConfig()
) -> dict[str, PRF]:
    """PRF per entity class plus a "micro" aggregate."""
    pe, _ = extract_entities(pred)
    ge, _ = extract_entities(gt)
    matching = _assign([e.text for e in pe], [e.text for e in ge])
    tp_pairs = _true_positives(matching, pe, ge, cfg)
    tp_pred = {i for i, _ in tp_pairs}
    tp_gt = {j for _, j in tp_pairs}

    out: dict[str, PRF] = {}
    for cls in EntityClass:
        tp = sum(1 for i, _ in tp_pairs if pe[i].cls is cls)
        fp = sum(1 for e in pe if e.cls is cls and e.index not in tp_pred)
        fn = sum(1 for e in ge if e.cls is cls and e.index not in tp_gt)
        out[cls.value] = PRF.from_counts(tp, fp, fn)
    out["micro"] = PRF.from_counts(
        len(tp_pairs), len(pe) - len(tp_pred), len(ge) - len(tp_gt)
    )
    return out


def _true_positives(matching: Matching, pe, ge, cfg: MatchConfig):
    eps = 1e-9
    return [
        (i, j)
        for i, j, c in matching.pairs
        if pe[i].cls is ge[j].cls and c <= cfg.text_threshold + eps
    ]


def relationship_prf(
    pred: ParseTree, gt: ParseTree, cfg: MatchConfig = MatchConfig()
) -> PRF:
    """Edge-level PRF; an edge is TP when both endpoints are TP entities
    whose ground-truth matches share the corresponding edge."""
    pe, p_edges = extract_entities(pred)
    ge, g_edges = extract_entities(gt)
    matching = _assign([e.text for e in pe], [e.text for e in ge])
    tp_map = dict(_true_positives(matching, pe, ge, cfg))
    gt_edge_set = {(a, b, k) for a, b, k in g_edges}
    tp_edges = set()
    tp = 0
    for a, b, k in p_edges:
        ga, gb = tp_map.get(a), tp_map.get(b)
        if ga is not None and gb is not None and (ga, gb, k) in gt_edge_set:
            tp += 1
            tp_edges.add((ga, gb, k))
    fp = len(p_edges) - tp
    fn = len(g_edges) - len(tp_edges)
    return PRF.from_counts(tp, fp, fn)


def align_word_sequences(
    pred: list[str], gt: list[str]
) -> tuple[list[tuple[int, int]], int]:
    """Monotone alignment minimizing total character edit distance.

    Skipping a word costs its length; returns (matched index pairs, total
    cost).  Lets downstream word-level scoring survive imperfect
    transcription.
    """
    n, m = len(pred), len(gt)
    dp = np.zeros((n + 1, m + 1), dtype=np.int64)
    for i in range(1, n + 1):
        dp[i, 0] = dp[i - 1, 0] + len(pred[i - 1])
    for j in range(1, m + 1):
        dp[0, j] = dp[0, j - 1] + len(gt[j - 1])
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            dp[i, j] = min(
                dp[i - 1, j - 1] + _levenshtein(pred[i - 1], gt[j - 1]),
                dp[i - 1, j] + len(pred[i - 1]),
                dp[i, j - 1] + len(gt[j - 1]),
            )
    pairs = []
    i, j = n, m
    while i > 0 and j > 0:
        if dp[i, j] == dp[i - 1, j - 1] + _levenshtein(pred[i - 1], gt[j - 1]):
            pairs.append((i - 1, j - 1))
            i -= 1
            j -= 1
        elif dp[i, j] == dp[i - 1, j] + len(pred[i - 1]):
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return pairs, int(dp[n, m])
