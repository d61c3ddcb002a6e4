import random
import string

import pytest

from formkit.edit_metrics import nted
from formkit.form_tree import (
    Entity,
    EntityClass,
    LabelTree,
    ParseTree,
    Table,
    TableOrientation,
)
from formkit.ganted import GantedConfig, ganted, ganted_label_trees, greedy_align_pass

from conftest import random_label_tree

L = LabelTree


def test_identical_trees_score_zero():
    t = L("", (L("a", (L("b"),)), L("c")))
    aligned, score = greedy_align_pass(t, t)
    assert score == 0.0
    assert aligned == t


def test_adjacent_swap_recovered():
    gt = L("", (L("alpha", (L("x"),)), L("beta", (L("y"),))))
    pred = L("", (gt.children[1], gt.children[0]))
    aligned, score = greedy_align_pass(pred, gt)
    assert score == pytest.approx(0.0, abs=1e-12)
    assert aligned == gt


def test_displacement_within_window_recovered():
    # distinct single-char labels keep every relabel at unit cost, so the
    # displaced child's return is the only strictly improving move
    labels = list(string.ascii_lowercase[:15])
    kids = tuple(L(c) for c in labels)
    gt = L("", kids)
    moved = list(kids)
    node = moved.pop(2)
    moved.insert(12, node)  # displacement 10
    pred = L("", tuple(moved))
    assert nted(pred, gt) > 0
    _, score = greedy_align_pass(pred, gt)
    assert score == pytest.approx(0.0, abs=1e-12)


def test_score_never_exceeds_initial_nted():
    rng = random.Random(7)
    for _ in range(40):
        pred = random_label_tree(rng, 25)
        gt = random_label_tree(rng, 25)
        s, passes, initial = ganted_label_trees(pred, gt, GantedConfig())
        assert s <= initial + 1e-12
        assert initial == pytest.approx(nted(pred, gt))


def test_second_pass_never_worse():
    rng = random.Random(8)
    for _ in range(30):
        pred = random_label_tree(rng, 25)
        gt = random_label_tree(rng, 25)
        one, _, _ = ganted_label_trees(pred, gt, GantedConfig(passes=1))
        two, passes, _ = ganted_label_trees(pred, gt, GantedConfig(passes=2))
        assert two <= one + 1e-12
        assert len(passes) == 2


def test_pass_is_idempotent_on_own_output():
    rng = random.Random(9)
    for _ in range(20):
        pred = random_label_tree(rng, 20)
        gt = random_label_tree(rng, 20)
        aligned, s1 = greedy_align_pass(pred, gt)
        again, s2 = greedy_align_pass(aligned, gt)
        assert s2 <= s1 + 1e-12


def test_window_zero_is_plain_nted():
    rng = random.Random(10)
    for _ in range(20):
        pred = random_label_tree(rng, 15)
        gt = random_label_tree(rng, 15)
        s, _, initial = ganted_label_trees(pred, gt, GantedConfig(window=0))
        assert s == pytest.approx(initial)


def _table(cells):
    rows = len(cells)
    cols = len(cells[0])
    return Table(
        row_headers=tuple(f"R{i}" for i in range(rows)),
        col_headers=tuple(f"C{j}" for j in range(cols)),
        cells=tuple(tuple(row) for row in cells),
    )


def test_orientation_enumeration_finds_transposed_match():
    gt = ParseTree((_table([["a", "b"], ["c", "d"]]),))
    # pred stores the transpose; only the ColMajor reading of pred matches
    pred = ParseTree((
        Table(
            row_headers=("C0", "C1"),
            col_headers=("R0", "R1"),
            cells=(("a", "c"), ("b", "d")),
        ),
    ))
    score, report = ganted(pred, gt)
    assert score == pytest.approx(0.0, abs=1e-12)
    assert report.combos_evaluated == 4
    assert not report.combos_capped


def test_orientation_cap_fixes_gt_row_major():
    tables = tuple(_table([["a", "b"], ["c", "d"]]) for _ in range(6))
    tree = ParseTree(tables)
    score, report = ganted(tree, tree, GantedConfig(max_orientation_combos=16))
    assert score == pytest.approx(0.0, abs=1e-12)
    assert report.combos_capped
    assert report.gt_orientations == (TableOrientation.ROW_MAJOR,) * 6


def test_ganted_report_scores_consistent():
    gt = ParseTree((Entity("Q", EntityClass.QUESTION, answers=("a", "b")),))
    pred = ParseTree((Entity("Q", EntityClass.QUESTION, answers=("b", "a")),))
    score, report = ganted(pred, gt)
    assert score == report.pass_scores[-1]
    assert score <= report.initial_nted
    assert score == pytest.approx(0.0, abs=1e-12)
