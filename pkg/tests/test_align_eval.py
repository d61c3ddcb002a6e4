import random

import pytest

from formkit.align_eval import (
    MatchConfig,
    align_entities,
    align_word_sequences,
    entity_prf,
    extract_entities,
    relationship_prf,
)
from formkit.form_tree import Entity, EntityClass, ParseTree, Table, parse_json


def q(text, *answers):
    return Entity(text, EntityClass.QUESTION, answers=tuple(answers))


def test_align_identity():
    tree = ParseTree((q("Name:", "Bob"), Entity("x", EntityClass.OTHER)))
    m = align_entities(tree, tree, MatchConfig())
    assert m.total_cost == 0.0
    assert not m.unmatched_pred and not m.unmatched_gt
    assert all(i == j for i, j, _ in m.pairs)


def test_align_close_text():
    pred = ParseTree((Entity("Nane", EntityClass.OTHER),))
    gt = ParseTree((Entity("Name", EntityClass.OTHER),))
    m = align_entities(pred, gt, MatchConfig())
    assert m.pairs == [(0, 0, pytest.approx(0.25))]


def test_align_empty_pred():
    gt = ParseTree((Entity("A", EntityClass.OTHER), Entity("B", EntityClass.OTHER)))
    m = align_entities(ParseTree(), gt, MatchConfig())
    assert m.unmatched_gt == [0, 1]
    assert not m.pairs


def test_align_cost_permutation_invariant():
    rng = random.Random(0)
    texts = ["alpha", "beta", "gamma", "delta"]
    gt = ParseTree(tuple(Entity(t, EntityClass.OTHER) for t in texts))
    for _ in range(10):
        shuffled = texts[:]
        rng.shuffle(shuffled)
        pred = ParseTree(tuple(Entity(t, EntityClass.OTHER) for t in shuffled))
        m = align_entities(pred, gt, MatchConfig())
        assert m.total_cost == pytest.approx(0.0)


def test_entity_prf_identity():
    tree = parse_json('{"T": "header", "contents":[{"Q": "question", "answers":["a"]}]}')
    micro = entity_prf(tree, tree, MatchConfig())["micro"]
    assert micro.precision == micro.recall == micro.f_measure == 1.0


def test_entity_prf_wrong_class_half():
    gt = ParseTree((Entity("A", EntityClass.QUESTION), Entity("B", EntityClass.OTHER)))
    pred = ParseTree((Entity("A", EntityClass.OTHER), Entity("B", EntityClass.OTHER)))
    micro = entity_prf(pred, gt, MatchConfig())["micro"]
    assert micro.tp == 1 and micro.fp == 1 and micro.fn == 1
    assert micro.f_measure == pytest.approx(0.5)


def test_entity_prf_empty_pred():
    gt = ParseTree((Entity("A", EntityClass.OTHER),))
    micro = entity_prf(ParseTree(), gt, MatchConfig())["micro"]
    assert micro.precision == 0.0 and micro.recall == 0.0 and micro.f_measure == 0.0


def test_threshold_monotone_in_tp():
    gt = ParseTree((Entity("Name", EntityClass.OTHER),))
    pred = ParseTree((Entity("Nane", EntityClass.OTHER),))
    strict = entity_prf(pred, gt, MatchConfig(text_threshold=0.0))["micro"]
    loose = entity_prf(pred, gt, MatchConfig(text_threshold=0.3))["micro"]
    assert strict.tp == 0 and loose.tp == 1


def test_tables_excluded_from_entities():
    table = Table(row_headers=("R",), col_headers=("C",), cells=(("x",),))
    refs, edges = extract_entities(ParseTree((table,)))
    assert refs == [] and edges == []


def test_relationship_identity_two_answers():
    tree = ParseTree((q("Q", "a1", "a2"),))
    prf = relationship_prf(tree, tree, MatchConfig())
    assert prf.tp == 2 and prf.fp == 0 and prf.fn == 0
    assert prf.f_measure == 1.0


def test_relationship_wrong_attachment():
    gt = ParseTree((q("Q1", "a"), q("Q2", "b")))
    pred = ParseTree((q("Q1", "b"), q("Q2", "a")))
    prf = relationship_prf(pred, gt, MatchConfig())
    assert prf.tp == 0 and prf.fp == 2 and prf.fn == 2


def test_relationship_no_edges():
    tree = ParseTree((Entity("A", EntityClass.OTHER),))
    prf = relationship_prf(tree, tree, MatchConfig())
    assert prf.tp == prf.fp == prf.fn == 0
    assert prf.f_measure == 0.0


def test_header_content_edges_counted():
    tree = parse_json('{"T": "header", "contents":[{"Q": "question", "answers":["a"]}]}')
    prf = relationship_prf(tree, tree, MatchConfig())
    assert prf.tp == 2  # header->question and question->answer


def test_word_alignment_identity():
    pairs, cost = align_word_sequences(["a", "b"], ["a", "b"])
    assert pairs == [(0, 0), (1, 1)] and cost == 0


def test_word_alignment_typo():
    pairs, cost = align_word_sequences(["thw", "cat"], ["the", "cat"])
    assert pairs == [(0, 0), (1, 1)] and cost == 1


def test_word_alignment_gap():
    pairs, cost = align_word_sequences(["cat"], ["the", "cat"])
    assert pairs == [(0, 1)] and cost == 3


def test_word_alignment_upper_bound():
    rng = random.Random(1)
    for _ in range(30):
        pred = [str(rng.randint(0, 99)) for _ in range(rng.randint(0, 6))]
        gt = [str(rng.randint(0, 99)) for _ in range(rng.randint(0, 6))]
        _, cost = align_word_sequences(pred, gt)
        assert cost <= sum(map(len, pred)) + sum(map(len, gt))
