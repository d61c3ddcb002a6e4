import random
import string

import pytest

from formkit.form_tree import LabelTree
from formkit.pools import ContentPools


@pytest.fixture(scope="session")
def pools() -> ContentPools:
    return ContentPools()


def random_word(rng: random.Random, lo: int = 1, hi: int = 6) -> str:
    return "".join(rng.choices(string.ascii_lowercase, k=rng.randint(lo, hi)))


def random_label_tree(rng: random.Random, max_nodes: int, label_len: tuple[int, int] = (1, 4)) -> LabelTree:
    """Random tree with an empty-label root, at most max_nodes nodes total."""
    budget = rng.randint(1, max_nodes)

    def grow(remaining: list[int], depth: int) -> LabelTree:
        label = random_word(rng, *label_len)
        children = []
        while remaining[0] > 0 and depth < 6 and rng.random() < 0.6:
            remaining[0] -= 1
            children.append(grow(remaining, depth + 1))
        return LabelTree(label, tuple(children))

    remaining = [budget - 1]
    roots = [grow(remaining, 1)]
    while remaining[0] > 0:
        remaining[0] -= 1
        roots.append(grow(remaining, 1))
    return LabelTree("", tuple(roots))
