import itertools

import pytest
from hypothesis import strategies as st

from ucsc import SetFamily, paper_example


@pytest.fixture
def paper():
    return paper_example()


def fam(n, *sets):
    return SetFamily.from_sets(n, sets)


def powerset(n):
    items = range(1, n + 1)
    return fam(n, *itertools.chain.from_iterable(itertools.combinations(items, k) for k in range(n + 1)))


# plain-set oracles, independent of the bitmask code paths


def oracle_closure(sets):
    cur = {frozenset(s) for s in sets}
    while True:
        nxt = cur | {a | b for a in cur for b in cur}
        if nxt == cur:
            return cur
        cur = nxt


def oracle_counts(sets, n):
    return [sum(1 for s in sets if e in s) for e in range(1, n + 1)]


def oracle_union_closed(sets):
    fs = {frozenset(s) for s in sets}
    return all(a | b in fs for a in fs for b in fs)


@st.composite
def families(draw, n_min=1, n_max=8, max_members=12, with_empty=None):
    n = draw(st.integers(n_min, n_max))
    masks = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=max_members))
    if with_empty or (with_empty is None and draw(st.booleans())):
        masks.append(0)
    return SetFamily.from_masks(n, masks)


@st.composite
def closed_families(draw, n_min=2, n_max=7, max_gens=5):
    """Union-closed families containing the empty set and the full ground set."""
    from ucsc import union_closure

    n = draw(st.integers(n_min, n_max))
    gens = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=0, max_size=max_gens))
    return union_closure(SetFamily.from_masks(n, [0, (1 << n) - 1, *gens]))


@st.composite
def perms(draw, n):
    return draw(st.permutations(list(range(1, n + 1))))
