"""String and tree edit distances.

ted() is an exact ordered-tree edit distance (Zhang-Shasha dynamic program
over keyroots) with normalized Levenshtein as the default relabel cost.
ted_bruteforce() is an independent exhaustive-search oracle for small
trees, used to validate ted().  nted() normalizes by the ground-truth
node count (excluding the synthetic super-root).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable

import numpy as np
from numba import njit

from .form_tree import LabelTree


@lru_cache(maxsize=1 << 16)
def _levenshtein(a: str, b: str) -> int:
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[-1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def levenshtein_norm(a: str, b: str) -> float:
    """Character edit distance divided by max(len(a), len(b)); 0 for two empties."""
    if not a and not b:
        return 0.0
    return _levenshtein(a, b) / max(len(a), len(b))


@dataclass(frozen=True)
class TedCosts:
    delete_cost: float = 1.0
    insert_cost: float = 1.0
    relabel: Callable[[str, str], float] = field(default=levenshtein_norm)


DEFAULT_COSTS = TedCosts()


class TooLarge(ValueError):
    pass


# ---------------------------------------------------------------------------
# tree flattening


@dataclass(frozen=True)
class FlatTree:
    """Postorder view: labels, leftmost-leaf-descendants, keyroots."""

    labels: tuple[str, ...]
    lmld: np.ndarray
    keyroots: np.ndarray

    @property
    def size(self) -> int:
        return len(self.labels)


def flatten(tree: LabelTree) -> FlatTree:
    labels: list[str] = []
    lmld: list[int] = []

    def walk(node: LabelTree) -> int:
        first = None
        for c in node.children:
            f = walk(c)
            if first is None:
                first = f
        labels.append(node.label)
        lmld.append(first if first is not None else len(labels) - 1)
        return lmld[-1]

    walk(tree)
    n = len(labels)
    seen: set[int] = set()
    keyroots = []
    for i in range(n - 1, -1, -1):
        if lmld[i] not in seen:
            seen.add(lmld[i])
            keyroots.append(i)
    keyroots.reverse()
    return FlatTree(tuple(labels), np.asarray(lmld, np.int64), np.asarray(keyroots, np.int64))


@njit(cache=True)
def _zs_kernel(lmld1, kr1, lmld2, kr2, C, dcost, icost):  # pragma: no cover (jit)
    n1 = lmld1.shape[0]
    n2 = lmld2.shape[0]
    td = np.zeros((n1, n2))
    fd = np.zeros((n1 + 1, n2 + 1))
    for a in range(kr1.shape[0]):
        i_ = kr1[a]
        l1 = lmld1[i_]
        m = i_ - l1 + 2
        for b in range(kr2.shape[0]):
            j_ = kr2[b]
            l2 = lmld2[j_]
            n = j_ - l2 + 2
            fd[0, 0] = 0.0
            for x in range(1, m):
                fd[x, 0] = fd[x - 1, 0] + dcost
            for y in range(1, n):
                fd[0, y] = fd[0, y - 1] + icost
            for x in range(1, m):
                i = l1 + x - 1
                for y in range(1, n):
                    j = l2 + y - 1
                    best = fd[x - 1, y] + dcost
                    alt = fd[x, y - 1] + icost
                    if alt < best:
                        best = alt
                    if lmld1[i] == l1 and lmld2[j] == l2:
                        alt = fd[x - 1, y - 1] + C[i, j]
                        if alt < best:
                            best = alt
                        fd[x, y] = best
                        td[i, j] = best
                    else:
                        alt = fd[lmld1[i] - l1, lmld2[j] - l2] + td[i, j]
                        if alt < best:
                            best = alt
                        fd[x, y] = best
    return td[n1 - 1, n2 - 1]


def _cost_matrix(labels_a, labels_b, relabel) -> np.ndarray:
    ua = sorted(set(labels_a))
    ub = sorted(set(labels_b))
    ia = {s: i for i, s in enumerate(ua)}
    ib = {s: i for i, s in enumerate(ub)}
    cu = np.empty((len(ua), len(ub)))
    for s, i in ia.items():
        for t, j in ib.items():
            cu[i, j] = relabel(s, t)
    rows = np.fromiter((ia[s] for s in labels_a), np.int64, len(labels_a))
    cols = np.fromiter((ib[s] for s in labels_b), np.int64, len(labels_b))
    return cu[rows][:, cols]


def ted_flat(fa: FlatTree, fb: FlatTree, C: np.ndarray, costs: TedCosts = DEFAULT_COSTS) -> float:
    return float(
        _zs_kernel(fa.lmld, fa.keyroots, fb.lmld, fb.keyroots, C, costs.delete_cost, costs.insert_cost)
    )


def ted(a: LabelTree, b: LabelTree, costs: TedCosts = DEFAULT_COSTS) -> float:
    """Exact minimum-cost ordered-tree edit distance."""
    fa, fb = flatten(a), flatten(b)
    C = _cost_matrix(fa.labels, fb.labels, costs.relabel)
    return ted_flat(fa, fb, C, costs)


def nted(pred: LabelTree, gt: LabelTree, costs: TedCosts = DEFAULT_COSTS) -> float:
    """ted / ground-truth node count, the super-root excluded.

    Both trees must carry the synthetic super-root from to_label_tree.
    With unit delete cost the denominator equals the distance from gt to
    an empty tree, so nted(empty, gt) = 1.
    """
    denom = max(gt.size() - 1, 1)
    return ted(pred, gt, costs) / denom


def nted_flat(fa: FlatTree, fb: FlatTree, C: np.ndarray, costs: TedCosts = DEFAULT_COSTS) -> float:
    return ted_flat(fa, fb, C, costs) / max(fb.size - 1, 1)


# ---------------------------------------------------------------------------
# brute-force oracle


def ted_bruteforce(a: LabelTree, b: LabelTree, costs: TedCosts = DEFAULT_COSTS) -> float:
    """Exhaustive minimum over all valid ordered-tree mappings.

    A mapping pairs postorder nodes one-to-one preserving both postorder
    and ancestorship; unpaired nodes pay delete/insert.  Only for tiny
    trees (<= 7 nodes); this is the test oracle for ted().
    """
    fa, fb = flatten(a), flatten(b)
    if fa.size > 7 or fb.size > 7:
        raise TooLarge("brute-force oracle is limited to 7 nodes per tree")
    C = _cost_matrix(fa.labels, fb.labels, costs.relabel)
    na, nb = fa.size, fb.size

    def anc(lmld, i, j):  # is postorder node i an ancestor of j
        return lmld[i] <= j < i

    best = na * costs.delete_cost + nb * costs.insert_cost
    idx_a = range(na)
    idx_b = range(nb)
    for k in range(1, min(na, nb) + 1):
        for sa in combinations(idx_a, k):
            for sb in combinations(idx_b, k):
                ok = True
                for p, q in combinations(range(k), 2):
                    if anc(fa.lmld, sa[q], sa[p]) != anc(fb.lmld, sb[q], sb[p]):
                        ok = False
                        break
                if not ok:
                    continue
                cost = sum(C[sa[i], sb[i]] for i in range(k))
                cost += (na - k) * costs.delete_cost + (nb - k) * costs.insert_cost
                if cost < best:
                    best = cost
    return float(best)
