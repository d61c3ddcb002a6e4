import json
import random
import string

from hypothesis import given, settings
from hypothesis import strategies as st

from formkit.cleanup import CleanupConfig, collapse_repeats, repair_json
from formkit.form_tree import parse_json


def test_collapse_keeps_one_copy():
    assert collapse_repeats("abcdefgh" * 5) == "abcdefgh"


def test_collapse_period_below_minimum_unchanged():
    s = "abcdefg" * 9
    assert collapse_repeats(s) == s


def test_collapse_reps_below_minimum_unchanged():
    s = "X" + "12345678" * 4 + "Y"
    assert collapse_repeats(s) == s


def test_collapse_preserves_surrounding_text():
    s = "head " + "repeat.me" * 6 + " tail"
    assert collapse_repeats(s) == "head repeat.me tail"


def test_collapse_smallest_period_wins():
    # period 8 and period 16 both qualify; the smaller one collapses more
    s = "abcdefgh" * 10
    assert collapse_repeats(s) == "abcdefgh"


def test_collapse_multiple_runs():
    s = "aaaabbbb" * 5 + "-mid-" + "qwertyui" * 7
    assert collapse_repeats(s) == "aaaabbbb-mid-qwertyui"


def test_collapse_custom_config():
    cfg = CleanupConfig(min_period=2, min_reps=3)
    assert collapse_repeats("ababab", cfg) == "ab"


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="ab{}[]\",:x", max_size=80))
def test_collapse_idempotent_and_shrinking(s):
    once = collapse_repeats(s)
    assert collapse_repeats(once) == once
    assert len(once) <= len(s)


def test_collapse_idempotent_on_degenerate_strings():
    rng = random.Random(0)
    for _ in range(300):
        unit = "".join(rng.choices(string.ascii_letters, k=rng.randint(1, 12)))
        s = unit * rng.randint(1, 10) + "".join(rng.choices(string.ascii_letters, k=5))
        once = collapse_repeats(s)
        assert collapse_repeats(once) == once


def test_repair_noop_on_valid_input():
    src = '{"A": "question", "answers":["x"]}'
    out, log = repair_json(src)
    assert out == src
    assert len(log) == 0


def test_repair_appends_closers():
    out, log = repair_json('{"A": "question", "answers":["x"')
    assert out == '{"A": "question", "answers":["x"]}'
    assert len(log) > 0


def test_repair_trims_surrounding_garbage():
    out, _ = repair_json('garbage [{"A": "other"}] trailing')
    assert out == '[{"A": "other"}]'


def test_repair_unterminated_string():
    out, log = repair_json('{"A: "other"}')
    parse_json(out)
    assert log


def test_repair_worst_case_is_empty_array():
    out, _ = repair_json("%%%%%")
    assert out == "[]"


def test_repair_output_always_parses():
    rng = random.Random(1)
    corpus = [
        '{"T": "header", "contents":[{"Q": "question", "answers":["a"]}]}',
        '[{"A": "other"}, {"B": "question", "answers":["1", "2"]}]',
    ]
    for _ in range(200):
        s = rng.choice(corpus)
        # random deletions of structural characters
        chars = list(s)
        for _ in range(rng.randint(1, 4)):
            i = rng.randrange(len(chars))
            if chars[i] in '{}[]",:':
                del chars[i]
        out, _ = repair_json("".join(chars))
        json.loads(out)
        parse_json(out)


def test_repair_idempotent_on_own_output():
    rng = random.Random(2)
    src = '{"T": "header", "contents":[{"Q": "question", "answers":["a"]}]}'
    for _ in range(100):
        cut = rng.randint(1, len(src) - 1)
        out, _ = repair_json(src[:cut])
        again, log = repair_json(out)
        assert again == out
        assert len(log) == 0


def test_repair_log_offsets_in_bounds():
    src = '{"A": "question", "answers":["x"'
    _, log = repair_json(src)
    for _, offset, _ in log.entries:
        assert 0 <= offset <= len(src) + 8
